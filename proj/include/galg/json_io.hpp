#pragma once

// JSON reading and writing for fields, matrices, bimaps and graded algebras.
// Requires nlohmann/json.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "galg/bimap.hpp"
#include "galg/errors.hpp"
#include "galg/field.hpp"
#include "galg/graded.hpp"
#include "galg/linalg.hpp"

namespace galg::io {

using json = nlohmann::ordered_json;

inline json to_json(const Field& f) {
  return json{{"char", f.characteristic()}, {"deg", f.degree()}, {"min_poly", f.min_poly()}};
}

inline Field field_from_json(const json& j) {
  try {
    const auto p = j.at("char").get<std::uint32_t>();
    const auto k = j.value("deg", 1u);
    if (k == 1) return Field::prime(p);
    std::optional<std::vector<std::uint32_t>> mp;
    if (j.contains("min_poly") && !j["min_poly"].is_null()) mp = j["min_poly"].get<std::vector<std::uint32_t>>();
    return Field::extension(p, k, mp);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad field description: ") + e.what());
  }
}

inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return rows;
}

/// Rows of integers; over prime fields any integer is reduced, otherwise
/// entries are element codes in [0, q).
inline Matrix matrix_from_json(const Field& f, const json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) throw InvalidInput("matrix has the wrong number of rows");
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw InvalidInput("matrix row has the wrong length");
    for (std::size_t c = 0; c < cols; ++c) {
      const auto v = j[i][c].get<std::int64_t>();
      if (f.is_prime_field()) {
        m(i, c) = f.from_int(v);
      } else {
        if (v < 0 || static_cast<std::uint64_t>(v) >= f.order()) throw InvalidInput("field element code out of range");
        m(i, c) = static_cast<Elem>(v);
      }
    }
  }
  return m;
}

inline json to_json(const Bimap& u, bool with_field = true) {
  json j;
  if (with_field) j["field"] = to_json(u.field());
  j["dims"] = {u.a(), u.b(), u.c()};
  json slices = json::array();
  for (const auto& s : u.slices()) slices.push_back(to_json(s));
  j["slices"] = slices;
  return j;
}

inline Bimap bimap_from_json(const json& j, const Field* outer = nullptr) {
  try {
    const Field f = j.contains("field") ? field_from_json(j["field"]) : outer ? *outer : throw InvalidInput("missing field");
    const auto dims = j.at("dims").get<std::vector<std::size_t>>();
    if (dims.size() != 3) throw InvalidInput("dims must have three entries");
    const auto& sl = j.at("slices");
    if (!sl.is_array() || sl.size() != dims[2]) throw InvalidInput("slice count does not match dims");
    std::vector<Matrix> slices;
    for (std::size_t k = 0; k < dims[2]; ++k) slices.push_back(matrix_from_json(f, sl[k], dims[0], dims[1]));
    return Bimap(f, dims[0], dims[1], std::move(slices));
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad bimap description: ") + e.what());
  }
}

inline std::string degree_key(const Degree& s) { return degree_string(s); }

inline Degree degree_from_key(const std::string& key) {
  try {
    return json::parse(key).get<Degree>();
  } catch (const json::exception&) {
    throw InvalidInput("bad degree key " + key);
  }
}

inline json to_json(const GradedAlgebra& a) {
  json j;
  j["field"] = to_json(a.field());
  j["monoid"] = {{"rank", a.monoid().rank()}, {"trunc", a.monoid().trunc}};
  json comps = json::object();
  for (const auto& s : a.support()) comps[degree_key(s)] = a.dim(s);
  j["components"] = comps;
  j["gen_degrees"] = a.gen_degrees();
  json prods = json::object();
  for (const auto& [k, t] : a.products()) prods[degree_key(k.first) + "|" + degree_key(k.second)] = to_json(t, false);
  j["products"] = prods;
  return j;
}

inline GradedAlgebra graded_from_json(const json& j, bool validate = true) {
  try {
    const Field f = field_from_json(j.at("field"));
    Monoid m;
    m.trunc = j.at("monoid").at("trunc").get<std::vector<int>>();
    if (j["monoid"].contains("rank") && j["monoid"]["rank"].get<std::size_t>() != m.trunc.size())
      throw InconsistentDims("monoid rank does not match trunc");
    std::map<Degree, std::size_t> comps;
    for (const auto& [key, val] : j.at("components").items()) comps[degree_from_key(key)] = val.get<std::size_t>();
    const auto gens = j.at("gen_degrees").get<std::vector<Degree>>();
    GradedAlgebra::Products prods;
    if (j.contains("products")) {
      for (const auto& [key, val] : j["products"].items()) {
        const auto bar = key.find('|');
        if (bar == std::string::npos) throw InvalidInput("product key must look like [s]|[t]");
        const Degree s = degree_from_key(key.substr(0, bar)), t = degree_from_key(key.substr(bar + 1));
        prods.emplace(std::make_pair(s, t), bimap_from_json(val, &f));
      }
    }
    if (validate) return load_graded(f, m, comps, gens, prods);
    return GradedAlgebra(f, m, comps, gens, prods);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad graded algebra description: ") + e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << j.dump(2) << "\n";
}

inline json to_json(const Homotopism& h) { return json{{"f2", to_json(h.f2)}, {"f1", to_json(h.f1)}, {"f0", to_json(h.f0)}}; }

inline json to_json(const GradedMap& g) {
  json j = json::object();
  for (const auto& [s, m] : g) j[degree_key(s)] = to_json(m);
  return j;
}

}  // namespace galg::io
