#include "ringlab/procedures.hpp"

#include <gmpxx.h>

#include <functional>

namespace ringlab {

namespace {

// Row-major grid of base-ring elements; the workhorse of the blockwise
// constructions. Kept local: the public surface deals in matrix-ring
// Elements.
struct Grid {
  const RingContext* base = nullptr;
  std::uint32_t rows = 0, cols = 0;
  std::vector<Element> cells;

  Element& at(std::uint32_t r, std::uint32_t c) { return cells[std::size_t{r} * cols + c]; }
  const Element& at(std::uint32_t r, std::uint32_t c) const {
    return cells[std::size_t{r} * cols + c];
  }
};

Grid make_grid(const RingContext& base, std::uint32_t rows, std::uint32_t cols) {
  Grid g{&base, rows, cols, {}};
  g.cells.assign(std::size_t{rows} * cols, base.zero());
  return g;
}

Grid grid_identity(const RingContext& base, std::uint32_t n) {
  Grid g = make_grid(base, n, n);
  for (std::uint32_t i = 0; i < n; ++i) g.at(i, i) = base.one();
  return g;
}

Grid grid_mul(const Grid& a, const Grid& b) {
  Grid out = make_grid(*a.base, a.rows, b.cols);
  for (std::uint32_t r = 0; r < a.rows; ++r) {
    for (std::uint32_t c = 0; c < b.cols; ++c) {
      Element acc = a.base->zero();
      for (std::uint32_t m = 0; m < a.cols; ++m) acc = acc + a.at(r, m) * b.at(m, c);
      out.at(r, c) = acc;
    }
  }
  return out;
}

Grid grid_sub(const Grid& a, const Grid& b) {
  Grid out = a;
  for (std::size_t i = 0; i < out.cells.size(); ++i) out.cells[i] = out.cells[i] - b.cells[i];
  return out;
}

Grid grid_scalar(std::int64_t c, const Grid& a) {
  Grid out = a;
  for (auto& cell : out.cells) cell = a.base->scalar_mul(c, cell);
  return out;
}

bool grid_eq(const Grid& a, const Grid& b) { return a.cells == b.cells; }

Grid grid_of(const Element& a) {
  const RingContext& ctx = a.ring();
  const std::uint32_t n = ctx.spec().dim();
  Grid g = make_grid(ctx.base_context(), n, n);
  for (std::uint32_t r = 0; r < n; ++r)
    for (std::uint32_t c = 0; c < n; ++c) g.at(r, c) = ctx.entry(a, r, c);
  return g;
}

Element element_of(const RingContext& ctx, const Grid& g) {
  return ctx.assemble_matrix(g.cells);
}

/// Inverse of an upper triangular grid whose diagonal entries are units,
/// by back substitution; both products are checked.
Grid upper_tri_inverse(const Grid& m) {
  const RingContext& base = *m.base;
  auto& st = base.structure();
  const std::uint32_t k = m.rows;
  Grid x = make_grid(base, k, k);
  for (std::uint32_t i = 0; i < k; ++i) {
    auto inv = st.inverse(m.at(i, i));
    if (!inv) throw PostconditionError("triangular diagonal entry is not invertible");
    x.at(i, i) = *inv;
  }
  for (std::uint32_t j = 1; j < k; ++j) {
    for (std::uint32_t i = j; i-- > 0;) {
      Element acc = base.zero();
      for (std::uint32_t mm = i + 1; mm <= j; ++mm) acc = acc + m.at(i, mm) * x.at(mm, j);
      x.at(i, j) = -(x.at(i, i) * acc);
    }
  }
  if (!grid_eq(grid_mul(m, x), grid_identity(base, k)) ||
      !grid_eq(grid_mul(x, m), grid_identity(base, k)))
    throw PostconditionError("triangular inverse check failed");
  return x;
}

}  // namespace

CommutingPseudoInverse witness_to_pseudo_inverse(const Element& a, const Element& e) {
  const RingContext& ctx = a.ring();
  ctx.require(e, "witness_to_pseudo_inverse");
  auto& st = ctx.structure();
  if (e * e != e) throw PreconditionError("e is not idempotent");
  if (!st.in_double_commutant(e, a)) throw PreconditionError("e is not in comm^2(a)");
  const Element u = a - e;
  const auto uinv = st.inverse(u);
  if (!uinv) throw PreconditionError("a - e is not a unit");

  const Element one = ctx.one();
  const Element x = *uinv * (one - e);
  const Element s = -*uinv;
  const Element t = -*uinv;

  if (x * a * x != x) throw PostconditionError("x != xax");
  if (!st.in_double_commutant(x, a)) throw PostconditionError("x not in comm^2(a)");
  if ((one - a) * s != one - x) throw PostconditionError("1-x not exhibited in (1-a)R");
  if (t * (one - a) != one - x) throw PostconditionError("1-x not exhibited in R(1-a)");
  return {x, s, t};
}

Element pseudo_inverse_to_witness(const Element& a, const Element& x) {
  const RingContext& ctx = a.ring();
  ctx.require(x, "pseudo_inverse_to_witness");
  auto& st = ctx.structure();
  if (x * a * x != x) throw PreconditionError("x != xax");
  if (!st.in_double_commutant(x, a)) throw PreconditionError("x is not in comm^2(a)");

  const Element one = ctx.one();
  const Element target = one - x;
  const Element one_minus_a = one - a;
  std::optional<Element> s, t;
  ctx.for_each([&](std::uint64_t, std::span<const std::uint32_t> leaves) {
    if (s && t) return;
    const Element cand = ctx.from_leaves(leaves);
    if (!s && one_minus_a * cand == target) s = cand;
    if (!t && cand * one_minus_a == target) t = cand;
  });
  if (!s || !t)
    throw PreconditionError("1 - x does not lie in (1-a)R and R(1-a)");

  const Element e = one - a * x;
  if (e * e != e) throw PostconditionError("1 - ax is not idempotent");
  if (!st.in_double_commutant(e, a)) throw PostconditionError("e not in comm^2(a)");
  const Element right_inv = x - e * *s;
  const Element left_inv = x - *t * e;
  if ((a - e) * right_inv != one || left_inv * (a - e) != one)
    throw PostconditionError("explicit inverse of a - e failed");
  return e;
}

bool corner_unit_check(const Element& a, const Element& e) {
  const RingContext& ctx = a.ring();
  ctx.require(e, "corner_unit_check");
  auto& st = ctx.structure();
  if (e * e != e) throw PreconditionError("e is not idempotent");
  if (!st.in_double_commutant(e, a)) throw PreconditionError("e is not in comm^2(a)");
  const Element one = ctx.one();
  const Element f = one - e;
  const CornerRing upper = st.corner(e);
  const CornerRing lower = st.corner(f);
  return upper.is_unit_in_corner(e * a * e) &&
         lower.is_unit_in_corner(f * (one - a) * f);
}

IdempotentPolynomial nil_clean_polynomial(std::uint32_t n, std::uint64_t characteristic) {
  if (n < 1) throw PreconditionError("nilpotency index must be >= 1");
  const std::uint32_t deg = 2 * n;
  std::vector<mpz_class> coef(deg + 1, mpz_class(0));
  mpz_class outer, inner;
  for (std::uint32_t i = 0; i <= n; ++i) {
    mpz_bin_uiui(outer.get_mpz_t(), deg, i);
    // t^(2n-i) (1-t)^i contributes C(i, j) (-1)^j t^(2n-i+j)
    for (std::uint32_t j = 0; j <= i; ++j) {
      mpz_bin_uiui(inner.get_mpz_t(), i, j);
      mpz_class term = outer * inner;
      if (j & 1) term = -term;
      coef[deg - i + j] += term;
    }
  }
  IdempotentPolynomial poly;
  poly.n = n;
  poly.characteristic = characteristic;
  poly.coefficients.reserve(coef.size());
  poly.reduced.reserve(coef.size());
  mpz_class modulus(static_cast<unsigned long>(characteristic));
  for (const auto& c : coef) {
    poly.coefficients.push_back(c.get_str());
    mpz_class r = c % modulus;           // sign follows the dividend
    if (r < 0) r += modulus;
    poly.reduced.push_back(r.get_ui());
  }
  return poly;
}

Element nil_clean_idempotent(const Element& a) {
  const RingContext& ctx = a.ring();
  auto& st = ctx.structure();
  const Element w = a - a * a;
  const auto n = st.nilpotency_index(w);
  if (!n) throw PreconditionError("a - a^2 is not nilpotent");
  const auto poly = nil_clean_polynomial(*n, ctx.characteristic());

  // Horner over the expanded coefficients...
  Element e = ctx.zero();
  for (std::size_t j = poly.reduced.size(); j-- > 0;)
    e = e * a + ctx.from_int(static_cast<std::int64_t>(poly.reduced[j]));

  // ... cross-checked against the termwise sum C(2n,i) a^(2n-i) (1-a)^i.
  const Element one_minus_a = ctx.one() - a;
  Element termwise = ctx.zero();
  mpz_class binom, modulus(static_cast<unsigned long>(ctx.characteristic()));
  for (std::uint32_t i = 0; i <= *n; ++i) {
    mpz_bin_uiui(binom.get_mpz_t(), 2 * *n, i);
    mpz_class r = binom % modulus;
    const Element term = ctx.pow(a, 2ull * *n - i) * ctx.pow(one_minus_a, i);
    termwise = termwise + ctx.scalar_mul(static_cast<std::int64_t>(r.get_ui()), term);
  }
  if (termwise != e) throw PostconditionError("polynomial evaluation routes disagree");

  if (e * e != e) throw PostconditionError("f(a) is not idempotent");
  if (!st.in_double_commutant(e, a)) throw PostconditionError("f(a) not in comm^2(a)");
  if (!st.nilpotency_index(a - e)) throw PostconditionError("a - f(a) is not nilpotent");
  return e;
}

Element two_sided_unit_witness(const Element& a) {
  const RingContext& ctx = a.ring();
  auto& st = ctx.structure();
  Classifier cls(ctx);
  const auto result = cls.classify(a * a, CleanProperty::PerfectlyClean);
  if (!result.holds)
    throw PreconditionError("no perfectly clean witness for a^2");
  const Element e = result.witness->idempotent;
  if (e * e != e || !st.in_double_commutant(e, a))
    throw PostconditionError("two-sided witness is not a comm^2 idempotent for a");
  if (!st.is_unit(a - e) || !st.is_unit(a + e))
    throw PostconditionError("a - e or a + e is not a unit");
  return e;
}

namespace {

struct QuadGrids {
  Grid u, v, u_inv, v_inv;
};

QuadGrids decompose_grid(const RingContext& base, const Grid& x_grid,
                         const std::function<Element(const Element&)>& witness) {
  auto& st = base.structure();
  const std::uint32_t k = x_grid.rows;
  const Element x = x_grid.at(0, 0);
  const Element e = witness(x);
  const Element u = x - e;
  const Element v = x + e;
  const Element u_inv = st.inverse(u).value();
  const Element v_inv = st.inverse(v).value();

  if (k == 1) {
    QuadGrids q{make_grid(base, 1, 1), make_grid(base, 1, 1), make_grid(base, 1, 1),
                make_grid(base, 1, 1)};
    q.u.at(0, 0) = u;
    q.v.at(0, 0) = v;
    q.u_inv.at(0, 0) = u_inv;
    q.v_inv.at(0, 0) = v_inv;
    return q;
  }

  // Schur-style step: recurse on X1 - 2 beta v^-1 alpha.
  Grid x1 = make_grid(base, k - 1, k - 1);
  for (std::uint32_t i = 0; i < k - 1; ++i)
    for (std::uint32_t j = 0; j < k - 1; ++j)
      x1.at(i, j) = x_grid.at(i + 1, j + 1) -
                    base.scalar_mul(2, x_grid.at(i + 1, 0) * v_inv * x_grid.at(0, j + 1));
  const QuadGrids rec = decompose_grid(base, x1, witness);

  QuadGrids q{make_grid(base, k, k), make_grid(base, k, k), make_grid(base, k, k),
              make_grid(base, k, k)};
  q.u.at(0, 0) = u;
  q.u_inv.at(0, 0) = u_inv;
  for (std::uint32_t i = 0; i < k - 1; ++i) {
    for (std::uint32_t j = 0; j < k - 1; ++j) {
      q.u.at(i + 1, j + 1) = rec.u.at(i, j);
      q.u_inv.at(i + 1, j + 1) = rec.u_inv.at(i, j);
    }
  }
  q.v = grid_sub(grid_scalar(2, x_grid), q.u);

  // V factors as [[1,0],[2 beta v^-1, I]] [[v, 2 alpha],[0, V1]]; invert
  // both factors explicitly.
  Grid l_inv = grid_identity(base, k);
  for (std::uint32_t i = 0; i < k - 1; ++i)
    l_inv.at(i + 1, 0) = base.scalar_mul(-2, x_grid.at(i + 1, 0) * v_inv);
  Grid t_inv = make_grid(base, k, k);
  t_inv.at(0, 0) = v_inv;
  for (std::uint32_t j = 0; j < k - 1; ++j) {
    Element acc = base.zero();
    for (std::uint32_t m = 0; m < k - 1; ++m)
      acc = acc + x_grid.at(0, m + 1) * rec.v_inv.at(m, j);
    t_inv.at(0, j + 1) = base.scalar_mul(-2, v_inv * acc);
  }
  for (std::uint32_t i = 0; i < k - 1; ++i)
    for (std::uint32_t j = 0; j < k - 1; ++j) t_inv.at(i + 1, j + 1) = rec.v_inv.at(i, j);
  q.v_inv = grid_mul(t_inv, l_inv);
  return q;
}

}  // namespace

SumOfUnitsDecomposer::SumOfUnitsDecomposer(const RingContext& matrix_ring)
    : ctx_(matrix_ring) {
  if (ctx_.spec().kind() != RingSpec::Kind::Matrix)
    throw PreconditionError("sum-of-units decomposition requires a matrix ring");
}

SumOfUnitsDecomposition SumOfUnitsDecomposer::decompose(const Element& a) {
  ctx_.require(a, "decompose");
  const RingContext& base = ctx_.base_context();
  const auto witness = [this, &base](const Element& x) -> Element {
    const std::uint64_t key = x.index();
    auto it = witness_memo_.find(key);
    if (it != witness_memo_.end()) return it->second;
    Element e = two_sided_unit_witness(x);
    witness_memo_.emplace(key, e);
    return e;
  };
  const QuadGrids q = decompose_grid(base, grid_of(a), witness);

  SumOfUnitsDecomposition d{a, element_of(ctx_, q.u), element_of(ctx_, q.v),
                            element_of(ctx_, q.u_inv), element_of(ctx_, q.v_inv)};
  const Element id = ctx_.one();
  if (d.u + d.v != ctx_.scalar_mul(2, a)) throw PostconditionError("U + V != 2A");
  if (d.u * d.u_inv != id || d.u_inv * d.u != id)
    throw PostconditionError("U inverse check failed");
  if (d.v * d.v_inv != id || d.v_inv * d.v != id)
    throw PostconditionError("V inverse check failed");
  return d;
}

SumOfUnitsDecomposition double_sum_of_units(const Element& a) {
  SumOfUnitsDecomposer dec(a.ring());
  return dec.decompose(a);
}

SylvesterSolution sylvester_solve(const Element& a, const Element& b, const Element& v) {
  const RingContext& ctx = a.ring();
  ctx.require(b, "sylvester_solve");
  ctx.require(v, "sylvester_solve");
  SylvesterSolution out{a, b, v, {}};
  ctx.for_each([&](std::uint64_t xi, std::span<const std::uint32_t> leaves) {
    if ((xi & 4095) == 0) ctx.budget().check("sylvester scan");
    const Element x = ctx.from_leaves(leaves);
    if (a * x - x * b == v) out.solutions.push_back(x);
  });
  return out;
}

bool sylvester_t2_criterion(const RingContext& t2_ring) {
  if (t2_ring.spec().kind() != RingSpec::Kind::Triangular || t2_ring.spec().dim() != 2)
    throw PreconditionError("criterion requires a T2(R) ring");
  const RingContext& base = t2_ring.base_context();
  auto& st = base.structure();
  if (!st.is_local()) throw PreconditionError("criterion requires a local base ring");

  const std::size_t L = base.leaf_count();
  const std::uint64_t n = base.order();
  Scratch s;
  std::vector<std::uint32_t> b(L), p(L), q(L), im(L);
  std::vector<bool> image(n);
  const Element one = base.one();
  for (std::uint64_t ji : st.jacobson().indices()) {
    const Element a = base.from_index(ji);
    for (std::uint64_t j2 : st.jacobson().indices()) {
      base.budget().check("sylvester criterion");
      const Element bj = base.from_index(j2);
      base.add_raw(b, one.leaves(), bj.leaves());  // b runs over 1 + J(R)
      std::fill(image.begin(), image.end(), false);
      std::uint64_t count = 0;
      const bool injective =
          base.for_each_until([&](std::uint64_t, std::span<const std::uint32_t> xx) {
            base.mul_raw(p, a.leaves(), xx, s);
            base.mul_raw(q, xx, b, s);
            base.sub_raw(im, p, q);
            const std::uint64_t idx = base.index_of(im);
            if (image[idx]) return false;
            image[idx] = true;
            ++count;
            return true;
          });
      if (!injective || count != n) return false;
    }
  }
  return true;
}

Element triangular_j_clean_lift(const Element& a) {
  const RingContext& ctx = a.ring();
  if (ctx.spec().kind() != RingSpec::Kind::Triangular)
    throw PreconditionError("lift requires a triangular matrix ring");
  if (!ctx.spec().base().is_commutative())
    throw PreconditionError("lift requires a commutative base ring");
  const RingContext& base = ctx.base_context();
  auto& bst = base.structure();
  if (!bst.in_jacobson(base.from_int(2)))
    throw PreconditionError("lift requires 2 in J(base)");

  Classifier bcls(base);
  std::function<Grid(const Grid&)> lift = [&](const Grid& g) -> Grid {
    const std::uint32_t k = g.rows;
    const Element a11 = g.at(0, 0);
    const auto wr = bcls.classify(a11, CleanProperty::PerfectlyJClean);
    if (!wr.holds)
      throw PreconditionError("diagonal entry " + a11.to_string() +
                              " is not perfectly J-clean in the base ring");
    const Element e11 = wr.witness->idempotent;
    if (k == 1) {
      Grid e = make_grid(base, 1, 1);
      e.at(0, 0) = e11;
      return e;
    }
    const Element w11 = a11 - e11;
    Grid a1 = make_grid(base, k - 1, k - 1);
    for (std::uint32_t i = 0; i < k - 1; ++i)
      for (std::uint32_t j = 0; j < k - 1; ++j) a1.at(i, j) = g.at(i + 1, j + 1);
    const Grid e1 = lift(a1);
    const Grid w1 = grid_sub(a1, e1);

    // M = W1 + (1 - 2 e11 - w11) I is a unit of the smaller triangular ring.
    const Element d = base.one() - base.scalar_mul(2, e11) - w11;
    Grid m = w1;
    for (std::uint32_t i = 0; i < k - 1; ++i) m.at(i, i) = m.at(i, i) + d;
    const Grid m_inv = upper_tri_inverse(m);

    // beta = alpha (E1 - e11 I) M^-1.
    Grid shifted = e1;
    for (std::uint32_t i = 0; i < k - 1; ++i)
      shifted.at(i, i) = shifted.at(i, i) - e11;
    const Grid p = grid_mul(shifted, m_inv);
    Grid e = make_grid(base, k, k);
    e.at(0, 0) = e11;
    for (std::uint32_t j = 0; j < k - 1; ++j) {
      Element acc = base.zero();
      for (std::uint32_t mm = 0; mm < k - 1; ++mm)
        acc = acc + g.at(0, mm + 1) * p.at(mm, j);
      e.at(0, j + 1) = acc;
    }
    for (std::uint32_t i = 0; i < k - 1; ++i)
      for (std::uint32_t j = 0; j < k - 1; ++j) e.at(i + 1, j + 1) = e1.at(i, j);
    return e;
  };

  const std::uint32_t n = ctx.spec().dim();
  Grid g = make_grid(base, n, n);
  for (std::uint32_t r = 0; r < n; ++r)
    for (std::uint32_t c = r; c < n; ++c) g.at(r, c) = ctx.entry(a, r, c);
  const Element e = element_of(ctx, lift(g));

  auto& st = ctx.structure();
  if (e * e != e) throw PostconditionError("lifted E is not idempotent");
  if (!st.in_jacobson(a - e)) throw PostconditionError("A - E is not in J(Tn(R))");
  if (!st.in_double_commutant(e, a)) throw PostconditionError("E not in comm^2(A)");
  return e;
}

RootCriterion char_root_criterion(const Element& a) {
  const RingContext& ctx = a.ring();
  if (ctx.spec().kind() != RingSpec::Kind::Matrix || ctx.spec().dim() != 2)
    throw PreconditionError("root criterion requires an M2(R) ring");
  if (!ctx.spec().base().is_commutative())
    throw PreconditionError("root criterion requires a commutative base ring");
  const RingContext& base = ctx.base_context();
  auto& bst = base.structure();
  if (!bst.is_local()) throw PreconditionError("root criterion requires a local base ring");

  auto& mst = ctx.structure();
  const auto& j2 = mst.jacobson();
  RootCriterion out;
  if (j2.contains(a.index())) {
    out.cls = RootClassification::InRadical;
    return out;
  }
  if (j2.contains((ctx.one() - a).index())) {
    out.cls = RootClassification::ComplementInRadical;
    return out;
  }
  const Element tr = ctx.entry(a, 0, 0) + ctx.entry(a, 1, 1);
  const Element det =
      ctx.entry(a, 0, 0) * ctx.entry(a, 1, 1) - ctx.entry(a, 0, 1) * ctx.entry(a, 1, 0);
  const auto& jb = bst.jacobson();
  const Element one = base.one();
  base.for_each([&](std::uint64_t xi, std::span<const std::uint32_t> leaves) {
    if (out.radical_root && out.unit_root) return;
    const Element x = base.from_leaves(leaves);
    if (x * x - tr * x + det != base.zero()) return;
    if (!out.radical_root && jb.contains(xi)) out.radical_root = x;
    if (!out.unit_root && jb.contains((x - one).index())) out.unit_root = x;
  });
  out.cls = out.radical_root && out.unit_root ? RootClassification::RootsFound
                                              : RootClassification::NoDecomposition;
  return out;
}

std::optional<Element> diagonalizing_conjugator(const Element& a) {
  const RingContext& ctx = a.ring();
  if (ctx.spec().kind() != RingSpec::Kind::Matrix)
    throw PreconditionError("similarity search requires a matrix ring");
  if (!ctx.base_context().structure().is_local())
    throw PreconditionError("similarity search requires a local base ring");
  auto& st = ctx.structure();
  const auto& inv = st.inverse_table();
  const std::uint32_t k = ctx.spec().dim();
  for (std::uint64_t ui : st.units().indices()) {
    ctx.budget().check("similarity scan");
    const Element u = ctx.from_index(ui);
    const Element c = u * a * ctx.from_index(inv[ui]);
    bool diagonal = true;
    for (std::uint32_t r = 0; r < k && diagonal; ++r)
      for (std::uint32_t cc = 0; cc < k && diagonal; ++cc)
        if (r != cc && !ctx.entry(c, r, cc).is_zero()) diagonal = false;
    if (diagonal) return u;
  }
  return std::nullopt;
}

}  // namespace ringlab
