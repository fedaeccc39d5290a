#pragma once

/**
 * @file module_expr.hpp
 * @brief Finite-dimensional polynomial GL_n-modules as construction trees.
 *
 * Canonical basis orders:
 *   - Sum: left basis, then right basis.
 *   - Tensor: left-major, (i, j) -> i * dim(right) + j.
 *   - Sym(d, E): monomials v_{i1} ... v_{id}, i1 <= ... <= id, lexicographic in
 *     (i1, ..., id); for E = Def(2), d = 2 this is x1^2, x1 x2, x2^2.
 *   - Ext(d, E): index sets i1 < ... < id in lexicographic order.
 *   - Ad(n): E_ij, row-major.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "nilsupport/error.hpp"

namespace nilsupport {

enum class ModuleOp { Triv, Def, Ad, Dual, Sum, Tensor, Sym, Ext, Twist };

namespace detail {

/// Non-decreasing index sequences of length d over 0..k-1, lexicographic.
inline std::vector<std::vector<std::size_t>> multisets(std::size_t k, std::size_t d) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == d) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < k; ++i) {
      cur.push_back(i);
      self(self, i);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Strictly increasing index sequences of length d over 0..k-1, lexicographic.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t k, std::size_t d) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == d) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < k; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  // r stays exact: r * (n - k + i) is divisible by i at every step.
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    std::uint64_t prod = 0;
    if (__builtin_mul_overflow(r, n - k + i, &prod)) throw DimensionError("module dimension overflow");
    r = prod / i;
  }
  return r;
}

}  // namespace detail

class ModuleExpr {
 public:
  /// Hard limit on module dimension; everything here is dense.
  static constexpr std::size_t kMaxDim = 1u << 14;

  static ModuleExpr triv() { return ModuleExpr(make(ModuleOp::Triv, 0, {})); }

  static ModuleExpr def(std::size_t n) {
    if (n == 0) throw DimensionError("def(n) needs n >= 1");
    return ModuleExpr(make(ModuleOp::Def, n, {}));
  }

  static ModuleExpr ad(std::size_t n) {
    if (n == 0) throw DimensionError("ad(n) needs n >= 1");
    return ModuleExpr(make(ModuleOp::Ad, n, {}));
  }

  static ModuleExpr dual(const ModuleExpr& e) { return ModuleExpr(make(ModuleOp::Dual, 0, {e.node_})); }
  static ModuleExpr sum(const ModuleExpr& a, const ModuleExpr& b) {
    return ModuleExpr(make(ModuleOp::Sum, 0, {a.node_, b.node_}));
  }
  static ModuleExpr tensor(const ModuleExpr& a, const ModuleExpr& b) {
    return ModuleExpr(make(ModuleOp::Tensor, 0, {a.node_, b.node_}));
  }
  static ModuleExpr sym(std::size_t d, const ModuleExpr& e) {
    return ModuleExpr(make(ModuleOp::Sym, d, {e.node_}));
  }
  static ModuleExpr ext(std::size_t d, const ModuleExpr& e) {
    if (d > e.dim()) throw DimensionError("ext(d, E) needs d <= dim E");
    return ModuleExpr(make(ModuleOp::Ext, d, {e.node_}));
  }
  static ModuleExpr twist(const ModuleExpr& e, std::size_t r) {
    return ModuleExpr(make(ModuleOp::Twist, r, {e.node_}));
  }

  ModuleOp op() const noexcept { return node_->op; }
  /// n for Def/Ad, d for Sym/Ext, r for Twist, 0 otherwise.
  std::size_t param() const noexcept { return node_->param; }
  std::size_t arity() const noexcept { return node_->kids.size(); }
  ModuleExpr child(std::size_t i) const { return ModuleExpr(node_->kids.at(i)); }

  std::size_t dim() const noexcept { return node_->dim; }
  /// Common n of the Def/Ad leaves; 0 when there are none (pure trivial modules).
  std::size_t rank() const noexcept { return node_->rank; }

  /// Polynomial degree in the entries of (g, g^{-1}): Def 1, Ad 2, Tensor adds,
  /// Sum takes the max, Sym/Ext multiply by d, Twist(., s) by p^s, Dual keeps it.
  std::size_t polydeg(std::uint32_t p) const { return polydeg_of(*node_, p); }

  bool needs_inverse() const noexcept { return node_->needs_inverse; }

  friend bool operator==(const ModuleExpr& a, const ModuleExpr& b) { return equal(*a.node_, *b.node_); }

  /// Human-readable labels of the canonical basis, in order.
  std::vector<std::string> basis_labels() const { return labels_of(*node_); }

 private:
  struct Node {
    ModuleOp op;
    std::size_t param;
    std::vector<std::shared_ptr<const Node>> kids;
    std::size_t dim = 0;
    std::size_t rank = 0;
    bool needs_inverse = false;
  };
  using NodePtr = std::shared_ptr<const Node>;

  explicit ModuleExpr(NodePtr node) : node_(std::move(node)) {}

  static NodePtr make(ModuleOp op, std::size_t param, std::vector<NodePtr> kids) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->param = param;
    n->kids = std::move(kids);
    std::size_t rank = 0;
    if (op == ModuleOp::Def || op == ModuleOp::Ad) rank = param;
    bool inv = op == ModuleOp::Dual || op == ModuleOp::Ad;
    for (const auto& k : n->kids) {
      if (k->rank != 0) {
        if (rank != 0 && rank != k->rank)
          throw MixedRank("def/ad leaves disagree on n (" + std::to_string(rank) + " vs " +
                          std::to_string(k->rank) + ")");
        rank = k->rank;
      }
      inv = inv || k->needs_inverse;
    }
    n->rank = rank;
    n->needs_inverse = inv;
    std::uint64_t dim = 0;
    switch (op) {
      case ModuleOp::Triv: dim = 1; break;
      case ModuleOp::Def: dim = param; break;
      case ModuleOp::Ad: dim = static_cast<std::uint64_t>(param) * param; break;
      case ModuleOp::Dual:
      case ModuleOp::Twist: dim = n->kids[0]->dim; break;
      case ModuleOp::Sum: dim = n->kids[0]->dim + n->kids[1]->dim; break;
      case ModuleOp::Tensor:
        dim = static_cast<std::uint64_t>(n->kids[0]->dim) * n->kids[1]->dim;
        break;
      // every module has dim >= 1, so k + d - 1 does not underflow
      case ModuleOp::Sym: dim = detail::binomial(n->kids[0]->dim + param - 1, param); break;
      case ModuleOp::Ext: dim = detail::binomial(n->kids[0]->dim, param); break;
    }
    if (dim > kMaxDim) throw DimensionError("module dimension " + std::to_string(dim) + " too large");
    n->dim = static_cast<std::size_t>(dim);
    return n;
  }

  static std::size_t polydeg_of(const Node& n, std::uint32_t p) {
    switch (n.op) {
      case ModuleOp::Triv: return 0;
      case ModuleOp::Def: return 1;
      case ModuleOp::Ad: return 2;
      case ModuleOp::Dual: return polydeg_of(*n.kids[0], p);
      case ModuleOp::Sum: return std::max(polydeg_of(*n.kids[0], p), polydeg_of(*n.kids[1], p));
      case ModuleOp::Tensor: return polydeg_of(*n.kids[0], p) + polydeg_of(*n.kids[1], p);
      case ModuleOp::Sym:
      case ModuleOp::Ext: return n.param * polydeg_of(*n.kids[0], p);
      case ModuleOp::Twist: {
        std::size_t d = polydeg_of(*n.kids[0], p);
        for (std::size_t i = 0; i < n.param; ++i) d *= p;
        return d;
      }
    }
    return 0;
  }

  static bool equal(const Node& a, const Node& b) {
    if (a.op != b.op || a.param != b.param || a.kids.size() != b.kids.size()) return false;
    for (std::size_t i = 0; i < a.kids.size(); ++i)
      if (!equal(*a.kids[i], *b.kids[i])) return false;
    return true;
  }

  static std::vector<std::string> labels_of(const Node& n) {
    std::vector<std::string> out;
    switch (n.op) {
      case ModuleOp::Triv: out.push_back("1"); break;
      case ModuleOp::Def:
        for (std::size_t i = 0; i < n.param; ++i) out.push_back("x" + std::to_string(i + 1));
        break;
      case ModuleOp::Ad:
        for (std::size_t i = 0; i < n.param; ++i)
          for (std::size_t j = 0; j < n.param; ++j)
            out.push_back("E" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
        break;
      case ModuleOp::Dual:
        for (auto& l : labels_of(*n.kids[0])) out.push_back(l + "*");
        break;
      case ModuleOp::Twist:
        for (auto& l : labels_of(*n.kids[0])) out.push_back(l + "^(" + std::to_string(n.param) + ")");
        break;
      case ModuleOp::Sum:
        for (auto& l : labels_of(*n.kids[0])) out.push_back("L:" + l);
        for (auto& l : labels_of(*n.kids[1])) out.push_back("R:" + l);
        break;
      case ModuleOp::Tensor: {
        auto a = labels_of(*n.kids[0]);
        auto b = labels_of(*n.kids[1]);
        for (auto& x : a)
          for (auto& y : b) out.push_back("(" + x + ")(x)(" + y + ")");
        break;
      }
      case ModuleOp::Sym:
      case ModuleOp::Ext: {
        auto a = labels_of(*n.kids[0]);
        const bool sym = n.op == ModuleOp::Sym;
        auto idx = sym ? detail::multisets(a.size(), n.param) : detail::subsets(a.size(), n.param);
        for (auto& seq : idx) {
          std::string s;
          for (std::size_t k = 0; k < seq.size(); ++k) {
            if (k) s += sym ? "." : "^";
            s += "[" + a[seq[k]] + "]";
          }
          out.push_back(s.empty() ? "1" : s);
        }
        break;
      }
    }
    return out;
  }

  NodePtr node_;
};

}  // namespace nilsupport
