#pragma once

#include <string>

#include "galg/galg.hpp"
#include "galg/json_io.hpp"

namespace testing_helpers {

inline galg::Bimap random_bimap(const galg::Field& f, std::size_t a, std::size_t b, std::size_t c, galg::Rng& rng) {
  std::vector<galg::Matrix> s;
  for (std::size_t k = 0; k < c; ++k) s.push_back(galg::Matrix::random(f, a, b, rng));
  return galg::Bimap(f, a, b, std::move(s));
}

inline galg::Homotopism random_isotopism(const galg::Bimap& u, galg::Rng& rng) {
  const galg::Field& f = u.field();
  return {galg::Matrix::random_invertible(f, u.a(), rng), galg::Matrix::random_invertible(f, u.b(), rng),
          galg::Matrix::random_invertible(f, u.c(), rng)};
}

inline galg::Bimap sample(const std::string& name) {
  return galg::io::bimap_from_json(galg::io::read_json_file(std::string(GALG_SAMPLES_DIR) + "/" + name));
}

}  // namespace testing_helpers
