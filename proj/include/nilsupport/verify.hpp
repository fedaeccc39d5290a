#pragma once

// Pointwise checks of the structural properties of supports over a finite set
// of tuples. Items:
//   1  alpha membership at B equals mu membership at the reversed tuple
//   2  membership is stable under uniform scaling by F_p^x (partial closedness)
//   3  Sum is the union
//   4  Tensor is the intersection
//   5  each term of a short exact sequence lies in the union of the other two
//   6  Frobenius twist shifts the tuple
//   7  free EA restriction implies the point is outside the support
//   8  Jordan types are invariant under conjugation

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "nilsupport/dsl.hpp"
#include "nilsupport/liealg.hpp"
#include "nilsupport/module_expr.hpp"
#include "nilsupport/oneparam.hpp"
#include "nilsupport/repcore.hpp"
#include "nilsupport/support.hpp"

namespace nilsupport {

using MembershipFn = std::function<bool(const ModuleExpr&, const NilTuple&)>;

inline const std::set<int>& known_items() {
  static const std::set<int> items{1, 2, 3, 4, 5, 6, 7, 8};
  return items;
}

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::size_t conjugations = 50;
  MembershipFn membership;  // empty means in_support
};

struct Counterexample {
  std::string modules;  // DSL strings joined by "; "
  std::optional<NilTuple> tuple;
  std::string detail;
};

struct ItemResult {
  int item = 0;
  bool passed = true;
  std::uint64_t checks = 0;
  std::uint64_t skipped = 0;
  std::optional<Counterexample> counterexample;

  void record(bool ok, const std::function<Counterexample()>& make) {
    ++checks;
    if (ok || !passed) {
      if (!ok) passed = false;
      return;
    }
    passed = false;
    counterexample = make();
  }
};

struct GridCell {
  std::uint32_t p = 2;
  std::size_t n = 2;
  std::size_t r = 1;
  std::size_t tuples = 0;
};

struct VerifyReport {
  std::string grid;  // preset name, empty for ad hoc runs
  std::uint64_t seed = 0;
  std::vector<GridCell> cells;
  std::vector<std::string> modules;
  std::vector<ItemResult> items;

  bool all_passed() const {
    return std::all_of(items.begin(), items.end(), [](const ItemResult& r) { return r.passed; });
  }
  ItemResult* find(int item) {
    for (auto& r : items)
      if (r.item == item) return &r;
    return nullptr;
  }
};

namespace detail {

inline std::string join_dsl(std::initializer_list<ModuleExpr> es) {
  std::string s;
  for (const auto& e : es) s += (s.empty() ? "" : "; ") + to_dsl(e);
  return s;
}

inline bool tuple_in_prime_field(const NilTuple& b) {
  const Field& f = *b.field();
  for (const auto& m : b.mats())
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!f.in_prime_field(m(i, j))) return false;
  return true;
}

/// (B_0, ..., B_{r-1}) -> (F(B_1), ..., F(B_{r-1})) with F the entrywise p-th power.
inline NilTuple frobenius_shift(const NilTuple& b) {
  std::vector<Matrix> mats;
  for (std::size_t s = 1; s < b.r(); ++s) mats.push_back(b[s].frob_power(1));
  return NilTuple::trusted(b.field(), b.n(), std::move(mats));
}

inline NilTuple scale_tuple(const NilTuple& b, Elem lambda) {
  std::vector<Matrix> mats;
  for (const auto& m : b.mats()) mats.push_back(m.scaled(lambda));
  return NilTuple::trusted(b.field(), b.n(), std::move(mats));
}

/// Pullback of E along B as a G_a(r)-module: u_s acts by [t^{p^s}] rho_E(g(t)).
inline EAModule ea_restriction(const ModuleExpr& e, const NilTuple& b) {
  const std::size_t p = b.field()->p();
  std::vector<Matrix> ops;
  if (b.r() > 0) {
    const std::size_t top = int_pow(p, b.r() - 1);
    const PolyMatrix rho = psg_eval(OneParamSubgroup(b), e, PolyRing(b.field(), top, true));
    for (std::size_t s = 0; s < b.r(); ++s) ops.push_back(coeff(rho, int_pow(p, s)));
  }
  return EAModule(b.field(), e.dim(), std::move(ops));
}

/// Indices of x_1^p, ..., x_n^p in the basis of Sym(p, Def(n)).
inline std::vector<std::size_t> pth_power_indices(std::size_t n, std::size_t p) {
  const auto monos = multisets(n, p);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < monos.size(); ++i)
    if (monos[i].front() == monos[i].back()) idx.push_back(i);
  return idx;
}

/// Steinberg module St_r = St_1 (x) St_1^(1) (x) ... (x) St_1^(r-1), St_1 = Sym(p-1, Def(2)).
inline ModuleExpr steinberg(std::size_t p, std::size_t r) {
  const ModuleExpr st1 = ModuleExpr::sym(p - 1, ModuleExpr::def(2));
  ModuleExpr acc = st1;
  for (std::size_t s = 1; s < r; ++s) acc = ModuleExpr::tensor(acc, ModuleExpr::twist(st1, s));
  return acc;
}

}  // namespace detail

/// Runs the selected items over every (module, tuple) combination.
/// Failures are report content; only an unknown item number throws.
inline VerifyReport verify_properties(const std::vector<ModuleExpr>& modules,
                                      const std::vector<NilTuple>& tuples, const std::set<int>& items,
                                      const VerifyOptions& options = {}) {
  for (int it : items)
    if (!known_items().count(it)) throw Error("unknown verification item " + std::to_string(it));
  const MembershipFn member = options.membership ? options.membership : MembershipFn(in_support);

  VerifyReport report;
  report.seed = options.seed;
  for (const auto& e : modules) report.modules.push_back(to_dsl(e));
  for (int it : items) report.items.push_back(ItemResult{it, true, 0, 0, std::nullopt});

  // Base membership table, reused by items 2-5.
  std::vector<std::vector<bool>> base(modules.size(), std::vector<bool>(tuples.size()));
  auto needs_base = [&] {
    for (int it : {2, 3, 4, 5})
      if (items.count(it)) return true;
    return false;
  };
  if (needs_base())
    for (std::size_t i = 0; i < modules.size(); ++i)
      for (std::size_t t = 0; t < tuples.size(); ++t) base[i][t] = member(modules[i], tuples[t]);

  if (auto* res = report.find(1)) {
    for (const auto& e : modules)
      for (const auto& b : tuples) {
        if (exp_degree_bound(e, b.field()->p()) > b.r()) {
          ++res->skipped;
          continue;
        }
        const NilTuple rev = lambda_reverse(b);
        const bool a = member(e, b);
        const bool m = in_support_mu(e, rev);
        res->record(a == m, [&] {
          return Counterexample{to_dsl(e), b,
                                "alpha membership " + std::to_string(a) + " but mu membership at reversed tuple " +
                                    std::to_string(m)};
        });
      }
  }

  if (auto* res = report.find(2)) {
    for (std::size_t i = 0; i < modules.size(); ++i)
      for (std::size_t t = 0; t < tuples.size(); ++t) {
        if (!base[i][t]) continue;
        const auto& b = tuples[t];
        for (Elem lambda = 2; lambda < b.field()->p(); ++lambda) {
          const bool scaled = member(modules[i], detail::scale_tuple(b, lambda));
          res->record(scaled, [&] {
            return Counterexample{to_dsl(modules[i]), b,
                                  "scaling by " + std::to_string(lambda) + " leaves the support"};
          });
        }
      }
  }

  auto pairwise = [&](int item, bool tensor) {
    auto* res = report.find(item);
    if (!res) return;
    for (std::size_t i = 0; i < modules.size(); ++i)
      for (std::size_t j = i; j < modules.size(); ++j) {
        if (modules[i].rank() != 0 && modules[j].rank() != 0 && modules[i].rank() != modules[j].rank())
          continue;
        const ModuleExpr combined =
            tensor ? ModuleExpr::tensor(modules[i], modules[j]) : ModuleExpr::sum(modules[i], modules[j]);
        for (std::size_t t = 0; t < tuples.size(); ++t) {
          const bool lhs = member(combined, tuples[t]);
          const bool rhs = tensor ? (base[i][t] && base[j][t]) : (base[i][t] || base[j][t]);
          res->record(lhs == rhs, [&] {
            return Counterexample{detail::join_dsl({modules[i], modules[j]}), tuples[t],
                                  std::string(tensor ? "tensor" : "sum") + " membership " + std::to_string(lhs) +
                                      ", expected " + std::to_string(rhs)};
          });
        }
      }
  };
  pairwise(3, false);
  pairwise(4, true);

  if (auto* res = report.find(5)) {
    auto contained = [](bool x, bool y, bool z) { return (!x || y || z) && (!y || x || z) && (!z || x || y); };
    for (std::size_t i = 0; i < modules.size(); ++i)
      for (std::size_t j = 0; j < modules.size(); ++j) {
        if (modules[i].rank() != 0 && modules[j].rank() != 0 && modules[i].rank() != modules[j].rank())
          continue;
        const ModuleExpr middle = ModuleExpr::sum(modules[i], modules[j]);
        for (std::size_t t = 0; t < tuples.size(); ++t) {
          const bool m2 = member(middle, tuples[t]);
          res->record(contained(base[i][t], m2, base[j][t]), [&] {
            return Counterexample{detail::join_dsl({modules[i], middle, modules[j]}), tuples[t],
                                  "split sequence violates the union bound"};
          });
        }
      }
    // 0 -> W -> Sym(p, Def(n)) -> Sym(p, Def(n)) / W -> 0, W spanned by the x_i^p.
    for (const auto& b : tuples) {
      const std::size_t p = b.field()->p();
      const ModuleExpr v = ModuleExpr::sym(p, ModuleExpr::def(b.n()));
      const Matrix alpha = alpha_operator(v, b).matrix();
      std::vector<Vector> w;
      for (auto idx : detail::pth_power_indices(b.n(), p)) {
        Vector e(v.dim(), 0);
        e[idx] = 1;
        w.push_back(std::move(e));
      }
      try {
        const auto rq = quotient_and_restrict(alpha, w);
        const bool in_w = !operator_is_free(rq.restriction);
        const bool in_q = !operator_is_free(rq.quotient);
        const bool in_v = member(v, b);
        res->record(contained(in_w, in_v, in_q), [&] {
          return Counterexample{to_dsl(v), b, "W, V, V/W supports violate the union bound"};
        });
      } catch (const NotInvariant&) {
        res->record(false, [&] { return Counterexample{to_dsl(v), b, "span of p-th powers is not invariant"}; });
      }
    }
  }

  if (auto* res = report.find(6)) {
    for (const auto& e : modules)
      for (const auto& b : tuples) {
        if (!detail::tuple_in_prime_field(b)) {
          ++res->skipped;
          continue;
        }
        const ModuleExpr tw = ModuleExpr::twist(e, 1);
        const bool lhs = member(tw, b);
        const bool rhs = member(e, detail::frobenius_shift(b));
        res->record(lhs == rhs, [&] {
          return Counterexample{to_dsl(tw), b,
                                "twist membership " + std::to_string(lhs) + ", shifted tuple gives " +
                                    std::to_string(rhs)};
        });
      }
  }

  if (auto* res = report.find(7)) {
    for (const auto& e : modules)
      for (const auto& b : tuples) {
        if (!ea_free(detail::ea_restriction(e, b))) continue;
        const bool mu = in_support_mu(e, b);
        res->record(!mu, [&] {
          return Counterexample{to_dsl(e), b, "EA restriction is free but mu is not free"};
        });
        if (exp_degree_bound(e, b.field()->p()) <= b.r()) {
          const bool a = member(e, lambda_reverse(b));
          res->record(!a, [&] {
            return Counterexample{to_dsl(e), b, "EA restriction is free but the reversed tuple is in the support"};
          });
        }
      }
    // Steinberg modules are projective over the Frobenius kernel of GL_2 of matching height.
    for (const auto& b : tuples) {
      if (b.n() != 2 || b.r() == 0 || b.is_zero()) continue;
      const ModuleExpr st = detail::steinberg(b.field()->p(), b.r());
      const bool in = member(st, b);
      res->record(!in, [&] { return Counterexample{to_dsl(st), b, "Steinberg module has a nonzero support point"}; });
    }
    // Def(2) is not projective when p^r does not divide 2; some enumerated point must witness it.
    std::set<std::pair<std::uint32_t, std::size_t>> cells;
    for (const auto& b : tuples)
      if (b.n() == 2) cells.insert({b.field()->p(), b.r()});
    for (auto [p, r] : cells) {
      if (2 % int_pow(p, r) == 0) continue;
      const ModuleExpr def2 = ModuleExpr::def(2);
      bool witness = false;
      for (const auto& b : tuples)
        if (b.n() == 2 && b.field()->p() == p && b.r() == r && !b.is_zero() && member(def2, b)) {
          witness = true;
          break;
        }
      res->record(witness, [&] {
        return Counterexample{"def(2)", std::nullopt,
                              "no nonzero support point for p = " + std::to_string(p) + ", r = " + std::to_string(r)};
      });
    }
  }

  if (auto* res = report.find(8)) {
    std::mt19937_64 rng(options.seed);
    for (const auto& e : modules)
      for (const auto& b : tuples) {
        const JordanType jt = jordan_type(alpha_operator(e, b));
        const bool m = member(e, b);
        for (std::size_t k = 0; k < options.conjugations; ++k) {
          const Matrix g = random_invertible(b.n(), b.field(), rng);
          const NilTuple c = conjugate_tuple(b, g);
          const JordanType jc = jordan_type(alpha_operator(e, c));
          const bool mc = member(e, c);
          res->record(jt == jc && m == mc, [&] {
            return Counterexample{to_dsl(e), b,
                                  "conjugate has Jordan type " + jc.to_string() + ", original " + jt.to_string()};
          });
        }
      }
  }
  return report;
}

struct GridPreset {
  std::string name;
  std::vector<GridCell> cells;  // tuple counts filled in by verify_grid
  std::vector<std::string> modules;
};

inline GridPreset tiny_grid() {
  GridPreset g;
  g.name = "tiny";
  for (std::uint32_t p : {2u, 3u})
    for (std::size_t r : {1u, 2u}) g.cells.push_back(GridCell{p, 2, r, 0});
  g.modules = {"triv",          "def(2)",          "sym(2,def(2))", "sym(3,def(2))",
               "ten(def(2),def(2))", "tw(def(2),1)", "ext(2,def(2))"};
  return g;
}

inline GridPreset grid_preset(const std::string& name) {
  if (name == "tiny") return tiny_grid();
  throw Error("unknown grid preset '" + name + "'");
}

/// Enumerates every cell of the preset over F_p and merges the per-cell reports.
inline VerifyReport verify_grid(const GridPreset& grid, const std::set<int>& items, const VerifyOptions& options = {},
                                std::uint64_t budget = kDefaultBudget) {
  std::vector<ModuleExpr> modules;
  for (const auto& m : grid.modules) modules.push_back(parse_module(m));
  VerifyReport merged;
  merged.grid = grid.name;
  merged.seed = options.seed;
  merged.modules = grid.modules;
  for (int it : items) merged.items.push_back(ItemResult{it, true, 0, 0, std::nullopt});
  for (std::size_t c = 0; c < grid.cells.size(); ++c) {
    GridCell cell = grid.cells[c];
    const auto tuples = enumerate_cr(cell.n, cell.r, prime_field(cell.p), budget);
    cell.tuples = tuples.size();
    merged.cells.push_back(cell);
    VerifyOptions cell_opts = options;
    cell_opts.seed = options.seed * 1000003u + c;
    const VerifyReport part = verify_properties(modules, tuples, items, cell_opts);
    for (const auto& r : part.items) {
      auto* dst = merged.find(r.item);
      dst->checks += r.checks;
      dst->skipped += r.skipped;
      if (!r.passed && dst->passed) {
        dst->passed = false;
        dst->counterexample = r.counterexample;
      }
    }
  }
  return merged;
}

}  // namespace nilsupport
