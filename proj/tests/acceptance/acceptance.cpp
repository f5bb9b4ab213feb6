// Acceptance run: one PASS/FAIL line per criterion.
//
// The exit status is nonzero when a criterion fails that is not listed in
// kDocumented below. Documented failures still print FAIL.

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "../unit/graded_fixtures.hpp"
#include "galg/galg.hpp"
#include "galg/json_io.hpp"

using namespace galg;
using nlohmann::json;

namespace {

// Criteria whose literal statement does not hold; see README.
const std::set<std::string> kDocumented{"9"};

struct Outcome {
  bool pass = false;
  std::string detail;
};

int unexpected = 0, documented = 0;

void run(const std::string& id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) {
    o.pass = false;
    o.detail += "; over time limit";
  }
  std::ostringstream t;
  t.precision(2);
  t << std::fixed << secs;
  std::string tag;
  if (!o.pass) {
    if (kDocumented.count(id)) {
      ++documented;
      tag = " [documented]";
    } else {
      ++unexpected;
    }
  }
  std::cout << (o.pass ? "PASS" : "FAIL") << " " << id << " " << name << " (" << t.str() << "s, limit " << limit_s
            << "s): " << o.detail << tag << std::endl;
}

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult cli(const std::string& args) {
  const std::string cmd = std::string(GALG_CLI_PATH) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

Bimap sample(const std::string& name) {
  return io::bimap_from_json(io::read_json_file(std::string(GALG_SAMPLES_DIR) + "/" + name));
}

Bimap random_bimap(const Field& f, std::size_t a, std::size_t b, std::size_t c, Rng& rng) {
  std::vector<Matrix> s;
  for (std::size_t k = 0; k < c; ++k) s.push_back(Matrix::random(f, a, b, rng));
  return Bimap(f, a, b, std::move(s));
}

Homotopism random_isotopism(const Bimap& u, Rng& rng) {
  const Field& f = u.field();
  return {Matrix::random_invertible(f, u.a(), rng), Matrix::random_invertible(f, u.b(), rng),
          Matrix::random_invertible(f, u.c(), rng)};
}

std::string str(const std::vector<int>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return "(" + s + ")";
}

// ---- 1 ---------------------------------------------------------------------

Outcome figure2() {
  auto twos = [](const LabeledGeometry& g) {
    std::set<Vec> out;
    for (std::size_t i = 0; i < g.points.size(); ++i)
      if (g.points[i] == 2) out.insert(g.space.point(i));
    return out;
  };
  auto common = [](const LabeledGeometry& g, const std::set<Vec>& pts) {
    std::size_t n = 0;
    for (std::size_t l = 0; l < g.space.num_lines(); ++l) {
      std::set<Vec> on;
      for (auto p : g.space.line_points(l)) on.insert(g.space.point(p));
      if (std::includes(on.begin(), on.end(), pts.begin(), pts.end())) ++n;
    }
    return n;
  };
  const LabeledGeometry d(sample("D.json")), e(sample("E.json"));
  auto hd = d.point_histogram();
  const auto td = twos(d), te = twos(e);
  const std::set<Vec> expect_e{{0, 1, 0}, {0, 0, 1}, {1, 1, 2}, {1, 2, 1}};
  const std::size_t cd = common(d, td), ce = common(e, te);
  const bool ok = td.size() == 4 && cd >= 1 && hd[4] == 9 && te == expect_e && ce == 0 &&
                  d.line_histogram().size() == 2 && e.line_histogram().size() == 3;
  std::ostringstream s;
  s << "D: " << td.size() << " rank-2 points on " << cd << " common line(s), " << hd[4] << " rank-4 points, "
    << d.line_histogram().size() << " line classes; E: rank-2 set " << (te == expect_e ? "matches" : "differs")
    << ", " << ce << " common lines, " << e.line_histogram().size() << " line classes";
  return {ok, s.str()};
}

// ---- 2 ---------------------------------------------------------------------

Outcome d_vs_e() {
  CosetOptions o;
  o.strategy = GStrategy::full;
  const auto cs = pseudo_isometry_coset(sample("D.json"), sample("E.json"), o);
  return {cs.empty(), std::string(cs.empty() ? "empty" : "nonempty") + " after " + std::to_string(cs.candidates) +
                          " candidates"};
}

// ---- 3 ---------------------------------------------------------------------

Outcome scaffolding() {
  struct Row {
    std::size_t e;
    std::uint64_t q, points, lines;
  };
  const std::vector<Row> rows{{3, 3, 13, 13},   {4, 3, 40, 130},   {3, 5, 31, 31},
                              {4, 5, 156, 806}, {5, 3, 121, 1210}, {5, 5, 781, 20306}};
  bool ok = true;
  std::string bad;
  for (const auto& r : rows) {
    std::uint64_t gl = 1, qe = 1;
    for (std::size_t i = 0; i < r.e; ++i) qe *= r.q;
    for (std::uint64_t qi = 1, i = 0; i < r.e; ++i, qi *= r.q) gl *= qe - qi;
    const bool row_ok =
        count_points(r.e, r.q) == r.points && count_lines(r.e, r.q) == r.lines && gl_order(r.e, r.q) == gl;
    if (!row_ok) bad += " (e=" + std::to_string(r.e) + ",q=" + std::to_string(r.q) + ")";
    ok = ok && row_ok;
  }
  return {ok, ok ? "6 rows: points, lines and |GL(e,p)| agree" : "mismatch at" + bad};
}

// ---- 4, 5 ------------------------------------------------------------------

Outcome table1_modal() {
  std::string detail;
  bool any = false, flagged = true;
  for (int seed : {1, 2, 3}) {
    const auto r = cli("--seed " + std::to_string(seed) +
                       " experiment table1 --p 3 --k 5 --e 3 --trials 10 --expect-omega 16 --expect-psi 2");
    if (r.code != 0) return {false, "CLI exit code " + std::to_string(r.code)};
    const json j = json::parse(r.out);
    const bool match = j["expected"]["modal_matches"].get<bool>();
    any = any || match;
    flagged = flagged && (match || (j["expected"]["divergence"].get<bool>() && j["trials"].size() == 10));
    detail += (detail.empty() ? "" : "; ") + std::string("seed ") + std::to_string(seed) + ": (" +
              j["omega_order"].dump() + "," + j["psi_order"].dump() + ")";
  }
  return {any && flagged, "modal (|Omega|,|Psi|) " + detail + "; target (16,2)"};
}

Outcome table2_trivial() {
  std::string detail;
  bool ok = true;
  for (int d : {10, 20}) {
    const auto r = cli("--seed 1 experiment table2 --d " + std::to_string(d) + " --p 3 --e 3 --trials 10");
    if (r.code != 0) return {false, "CLI exit code " + std::to_string(r.code)};
    const json j = json::parse(r.out);
    const bool row = j["omega_mod_scalars"] == 1 && j["psi_order"] == 1 && j["trivial_trials"].get<int>() >= 8;
    ok = ok && row;
    detail += (detail.empty() ? "" : "; ") + std::string("d=") + std::to_string(d) + ": |Omega|=" +
              j["omega_order"].dump() + " (scalars only: " + j["omega_mod_scalars"].dump() + " mod scalars), |Psi|=" +
              j["psi_order"].dump() + ", trivial " + j["trivial_trials"].dump() + "/10";
  }
  return {ok, detail};
}

// ---- 6 ---------------------------------------------------------------------

struct Tally {
  std::size_t pairs = 0, mismatches = 0;
  std::string first;
};

void compare_isotopism(const Bimap& u, const Bimap& v, Tally& t) {
  ++t.pairs;
  const IsotopismCoset cs = isotopism_coset(u, v);
  const auto brute = oracle::brute_isotopisms(u, v);
  bool ok = cs.empty() == brute.empty();
  if (ok && !cs.empty()) ok = cs.order && *cs.order == brute.size() && is_isotopism(u, v, *cs.representative);
  if (!ok && t.mismatches++ == 0) t.first = "dims (" + std::to_string(u.a()) + "," + std::to_string(u.b()) + "," +
                                            std::to_string(u.c()) + ") over GF(" + std::to_string(u.field().order()) + ")";
}

Outcome isotopism_oracle() {
  Tally t;
  const Field f2 = Field::prime(2);
  Rng rng(6);
  std::size_t instances = 0;
  for (std::size_t a = 1; a <= 2; ++a)
    for (std::size_t b = 1; b <= 2; ++b)
      for (std::size_t c = 1; c <= 2; ++c) {
        const std::size_t n = a * b * c, total = std::size_t{1} << n;
        auto make = [&](std::size_t idx) {
          std::vector<Matrix> s;
          for (std::size_t k = 0; k < c; ++k) {
            Vec v(a * b);
            for (std::size_t i = 0; i < a * b; ++i) v[i] = (idx >> (k * a * b + i)) & 1;
            s.emplace_back(f2, a, b, v);
          }
          return Bimap(f2, a, b, s);
        };
        // each index is a distinct slice system, so no duplicates arise
        for (std::size_t idx = 0; idx < total; ++idx) {
          ++instances;
          const Bimap u = make(idx);
          compare_isotopism(u, u, t);
          compare_isotopism(u, make((idx * 37 + 11) % total), t);
          compare_isotopism(u, transport(u, random_isotopism(u, rng)), t);
        }
      }
  const Field f3 = Field::prime(3);
  for (int i = 0; i < 50; ++i) {
    const Bimap u = random_bimap(f3, 1 + rng.below(2), 1 + rng.below(2), 1 + rng.below(2), rng);
    const Bimap v = rng.below(2) ? transport(u, random_isotopism(u, rng)) : random_bimap(f3, u.a(), u.b(), u.c(), rng);
    compare_isotopism(u, u, t);
    compare_isotopism(u, v, t);
  }
  std::string d = std::to_string(instances) + " GF(2) instances + 50 GF(3), " + std::to_string(t.pairs) +
                  " pairs, " + std::to_string(t.mismatches) + " mismatches";
  if (t.mismatches) d += "; first at " + t.first;
  return {t.mismatches == 0, d};
}

// ---- 7 ---------------------------------------------------------------------

Outcome graded_oracle() {
  using namespace graded_fixtures;
  const Field f = Field::prime(2);
  std::vector<GradedAlgebra> pool{heisenberg_graded(f), three_generator(f, {0, 1}, {0, 2}),
                                  three_generator(f, {0, 1}, {1, 2}), three_generator(f, {0, 2}, {1, 2}),
                                  dense_lie({1, 1, 1}, f).algebra};
  Rng rng(7);
  std::vector<std::pair<GradedAlgebra, GradedAlgebra>> pairs;
  // the pair on which the identity in degree 1 has no extension
  pairs.emplace_back(pool[1], pool[2]);
  pairs.emplace_back(pool[4], pool[4]);
  while (pairs.size() < 30) {
    const GradedAlgebra& a = pool[rng.below(pool.size())];
    if (rng.below(2)) {
      pairs.emplace_back(a, transport_graded(a, random_graded_map(a, rng)));
    } else {
      pairs.emplace_back(a, pool[rng.below(pool.size())]);
    }
  }
  bool no_ext = false;
  try {
    extend_homotopism(pairs[0].first, pairs[0].second, {{{1}, Matrix::identity(f, 3)}});
  } catch (const NoExtension&) {
    no_ext = true;
  }
  std::size_t bad = 0, nonempty = 0;
  for (const auto& [a, b] : pairs) {
    const GradedCoset cs = graded_isomorphism_coset(a, b);
    const auto brute = oracle::brute_graded_isomorphisms(a, b);
    bool ok = cs.empty() == brute.empty();
    if (ok && !cs.empty()) {
      ++nonempty;
      ok = *graded_isomorphism_coset(a, a).order == oracle::brute_graded_isomorphisms(a, a).size();
    }
    if (!ok) ++bad;
  }
  return {bad == 0 && no_ext, "30 pairs (" + std::to_string(nonempty) + " isomorphic), " + std::to_string(bad) +
                                  " mismatches; NoExtension pair " + (no_ext ? "raises" : "does not raise")};
}

// ---- 8 ---------------------------------------------------------------------

Outcome classical_groups() {
  const Field f = Field::prime(3);
  const auto sp2 = isometry_group(heisenberg(1, f));
  IsometryOptions o;
  o.enumeration_limit = 1000;
  o.allow_gl_fallback = false;
  const auto sp4 = isometry_group(heisenberg(2, f), o);
  const Bimap h = heisenberg(1, f);
  const auto ps = pseudo_isometry_coset(h, h);
  const auto brute = oracle::brute_pseudo_isometries(h, h).size();
  const bool ok = sp2.order == std::optional<std::uint64_t>(24) && sp4.order == std::optional<std::uint64_t>(51840) &&
                  sp4.method == "cayley-closure" && ps.order == std::optional<std::uint64_t>(48) && brute == 48;
  std::ostringstream s;
  s << "|Sp(2,3)|=" << sp2.order.value_or(0) << ", |Sp(4,3)|=" << sp4.order.value_or(0) << " via " << sp4.method
    << ", |PsIsom(H)|=" << ps.order.value_or(0) << ", oracle " << brute;
  return {ok, s.str()};
}

// ---- 9 ---------------------------------------------------------------------

bool nondegenerate(const Bimap& u) {
  std::vector<Matrix> rows, cols;
  for (const auto& s : u.slices()) {
    rows.push_back(s);
    cols.push_back(s.transpose());
  }
  return rank(Matrix::hstack(rows, u.field(), u.a())) == u.a() && rank(Matrix::hstack(cols, u.field(), u.b())) == u.b();
}

Outcome ring_identities() {
  const Field f = Field::prime(3);
  Rng rng(9);
  std::size_t id_bad = 0, cap_bad = 0, cap_checked = 0, t_bad = 0;
  for (int i = 0; i < 100; ++i) {
    const Bimap u = random_bimap(f, 1 + rng.below(4), 1 + rng.below(4), 1 + rng.below(3), rng);
    const OperatorSpace m = adjoint_ring(u), c = centroid(u);
    for (const auto& t : m.basis) id_bad += !satisfies_identity(u, u, RingKind::M, t);
    for (const auto& t : c.basis) id_bad += !satisfies_identity(u, u, RingKind::C, t);
    const RingDims d = tri_ring_dims(u);
    t_bad += d.T != left_ring(u).dim() + m.dim() + right_ring(u).dim();
    if (u.c() >= 2) {
      ++cap_checked;
      const std::size_t cut = 1 + rng.below(u.c() - 1);
      std::vector<Matrix> a(u.slices().begin(), u.slices().begin() + cut), b(u.slices().begin() + cut, u.slices().end());
      const Bimap ua(f, u.a(), u.b(), a), ub(f, u.a(), u.b(), b);
      cap_bad += adjoint_ring(intersect({ua, ub})).as_subspace() !=
                 adjoint_ring(ua).as_subspace().intersect(adjoint_ring(ub).as_subspace());
    }
  }
  // adjoint bound on every layer of some dense algebras
  std::size_t layers = 0, nondeg = 0, over = 0, over_nondeg = 0;
  std::string witness;
  for (std::vector<std::size_t> dims :
       {std::vector<std::size_t>{1, 1, 1}, {2, 1, 2}, {1, 1, 1, 1}, {1, 2, 1, 2}, {1, 1, 1, 1, 1}}) {
    const GradedAlgebra a = dense_lie(dims, f).algebra;
    const std::size_t l = dims.size();
    std::size_t bound = dims[0] * dims[1] + dims[l - 2] * dims[l - 1];
    for (auto e : dims) bound += e * e;
    for (const auto& s : a.support()) {
      if (!a.dim(a.monoid().add({1}, s))) continue;
      const Bimap u = layer_bimap(a, {s});
      const std::size_t dm = adjoint_ring(u).dim();
      const bool nd = nondegenerate(u);
      ++layers;
      nondeg += nd;
      if (dm > bound) {
        ++over;
        over_nondeg += nd;
        if (witness.empty()) {
          std::vector<int> di(dims.begin(), dims.end());
          witness = "dense_lie" + str(di) + " layer " + std::to_string(s[0]) + ": dim M=" + std::to_string(dm) +
                    " > " + std::to_string(bound);
        }
      }
    }
  }
  std::ostringstream s;
  s << "identities " << (id_bad ? "FAIL" : "ok") << ", M(cap) " << (cap_bad ? "FAIL" : "ok") << " on " << cap_checked
    << ", dim T additive " << (t_bad ? "FAIL" : "ok") << "; dense bound holds on " << nondeg - over_nondeg << "/"
    << nondeg << " nondegenerate layers, exceeded on " << over << "/" << layers << " layers overall";
  if (!witness.empty()) s << " (e.g. " << witness << ")";
  return {id_bad == 0 && cap_bad == 0 && t_bad == 0 && over == 0, s.str()};
}

// ---- 10 --------------------------------------------------------------------

Outcome idealizer_lemma() {
  const Field f = Field::prime(3);
  Rng rng(10);
  std::size_t pairs = 0, bad = 0;
  for (int i = 0; i < 20; ++i) {
    const std::size_t c = 2 + rng.below(3);
    const Bimap u = random_bimap(f, 1 + rng.below(3), 1 + rng.below(3), c, rng);
    for (int j = 0; j < 10; ++j, ++pairs) {
      const Subspace s = Subspace::span(Matrix::random(f, 1 + rng.below(c), c, rng));
      const Subspace t = Subspace::span(Matrix::random(f, 1 + rng.below(c), c, rng));
      const Idealizers is = idealizers(u, s), it = idealizers(u, t);
      const Idealizers icap = idealizers(u, s.intersect(t)), isum = idealizers(u, s + t);
      const bool ok = icap.lambda == is.lambda.intersect(it.lambda) && icap.rho == is.rho.intersect(it.rho) &&
                      isum.lambda.contains(is.lambda + it.lambda) && isum.rho.contains(is.rho + it.rho) &&
                      is.lambda.contains(icap.lambda) && isum.lambda.contains(is.lambda) &&
                      is.rho.contains(icap.rho) && isum.rho.contains(is.rho);
      bad += !ok;
    }
  }
  return {bad == 0, std::to_string(pairs) + " subspace pairs over 20 bimaps, " + std::to_string(bad) + " violations"};
}

// ---- 11 --------------------------------------------------------------------

Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() / ("galg_acc_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const std::string d = dir.string(), s = GALG_SAMPLES_DIR;
  std::vector<std::string> setup{"gen --out " + d + "/h.json heisenberg --n 1 --p 3",
                                 "--seed 4 gen --out " + d + "/t.json twisted-heisenberg --p 3 --k 3 --project 2",
                                 "gen --out " + d + "/g.json dense --dims 1,1,1 --p 2"};
  for (const auto& c : setup)
    if (cli(c).code != 0) return {false, "setup failed: " + c};
  {
    std::ofstream a(d + "/a.json");
    a << R"({"field":{"char":3,"deg":1},"n":2,"generators":[[[1,0],[0,0]],[[0,1],[0,0]],[[0,0],[0,1]]]})";
  }
  const std::vector<std::string> cmds{
      "--seed 5 rings " + s + "/D.json",
      "--seed 5 units " + d + "/a.json",
      "--seed 5 isotopism " + s + "/D.json " + s + "/E.json",
      "--seed 5 isotopism " + d + "/t.json " + d + "/t.json",
      "--seed 5 graded-iso " + d + "/g.json " + d + "/g.json",
      "--seed 5 labels --lines --fingerprint --omega " + s + "/D.json",
      "--seed 5 pseudo-isometry " + d + "/h.json " + d + "/h.json",
      "--seed 5 gen heisenberg --n 2 --p 3",
      "--seed 5 gen twisted-heisenberg --p 3 --k 5 --project 3",
      "--seed 5 gen random2 --d 6 --p 3 --e 2",
      "--seed 5 gen dense --dims 1,2,1 --p 3 --thin",
      "--seed 5 oracle isotopism " + d + "/h.json " + d + "/h.json",
      "--seed 5 oracle pseudo-isometry " + d + "/h.json " + d + "/h.json",
      "--seed 5 oracle isometries " + d + "/h.json",
      "--seed 5 oracle graded-iso " + d + "/g.json " + d + "/g.json",
      "--seed 5 oracle units " + d + "/a.json",
      "--seed 5 experiment table1 --p 3 --k 5 --e 3 --trials 3",
      "--seed 5 experiment table2 --d 8 --p 3 --e 3 --trials 3",
      "--seed 5 experiment figure2",
      "--seed 5 --format text labels --lines " + s + "/E.json",
  };
  std::size_t bad = 0;
  std::string first;
  for (const auto& c : cmds) {
    const auto a = cli(c), b = cli(c);
    if (a.code == 1 || a.out.empty() || a.out != b.out || a.code != b.code) {
      if (bad++ == 0) first = c;
    }
  }
  std::filesystem::remove_all(dir);
  return {bad == 0, std::to_string(cmds.size()) + " commands run twice, " + std::to_string(bad) + " differ or fail" +
                        (bad ? " (first: " + first + ")" : "")};
}

// ---- layer selection -------------------------------------------------------

Outcome interior_layer() {
  const GradedAlgebra a = dense_lie({1, 1, 1, 1, 1, 1}, Field::prime(3)).algebra;
  const LayerChoice c = select_layer(a);
  const bool ok = c.scores.size() >= 3 && c.layer.front() != c.scores.front().first &&
                  c.layer.front() != c.scores.back().first;
  return {ok, "select_layer picks degree " + std::to_string(c.layer.front()[0]) + " of " +
                  std::to_string(c.scores.size()) + " scored layers"};
}

}  // namespace

int main() {
  run("1", "worked examples D and E", 1, figure2);
  run("2", "D and E not pseudo-isometric", 300, d_vs_e);
  run("3", "table scaffolding", 1, scaffolding);
  run("4", "table 1 modal values (3,5,3)", 1800, table1_modal);
  run("5", "table 2 triviality", 1200, table2_trivial);
  run("6", "isotopism vs oracle", 600, isotopism_oracle);
  run("7", "graded isomorphism vs oracle", 600, graded_oracle);
  run("8", "classical group orders", 900, classical_groups);
  run("9", "ring identities", 300, ring_identities);
  run("10", "idealizer lemma", 120, idealizer_lemma);
  run("11", "CLI determinism", 600, determinism);
  run("L", "select_layer interior argmin", 60, interior_layer);
  std::cout << "unexpected failures: " << unexpected << ", documented failures: " << documented << std::endl;
  return unexpected == 0 ? 0 : 1;
}
