#include "ringlab/structure.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

namespace ringlab {

StructureCache& RingContext::structure() const {
  std::call_once(structure_once_,
                 [this] { structure_ = std::make_unique<StructureCache>(*this); });
  return *structure_;
}

namespace {

using CSpan = std::span<const std::uint32_t>;

inline bool eq(CSpan a, CSpan b) { return std::equal(a.begin(), a.end(), b.begin()); }

}  // namespace

void StructureCache::compute_units() {
  const std::uint64_t n = ctx_.order();
  const std::size_t L = ctx_.leaf_count();
  inv_.assign(n, kNoInverse);
  std::vector<bool> bits(n, false);
  const Element one = ctx_.one();
  const CSpan one_sp = one.leaves();
  Scratch s;
  std::vector<std::uint32_t> prod(L);
  ctx_.for_each([&](std::uint64_t ai, CSpan a) {
    if ((ai & 1023) == 0) ctx_.budget().check("units enumeration");
    if (bits[ai]) return;  // inverse already recorded as a partner
    ctx_.for_each_until([&](std::uint64_t bi, CSpan b) {
      ctx_.mul_raw(prod, a, b, s);
      if (!eq(prod, one_sp)) return true;
      ctx_.mul_raw(prod, b, a, s);
      if (!eq(prod, one_sp)) return true;
      bits[ai] = true;
      inv_[ai] = bi;
      bits[bi] = true;
      inv_[bi] = ai;
      return false;
    });
  });
  units_ = ElementSet::from_bits(n, bits);
}

const ElementSet& StructureCache::units() {
  std::call_once(units_once_, [this] { compute_units(); });
  return units_;
}

const std::vector<std::uint64_t>& StructureCache::inverse_table() {
  units();
  return inv_;
}

bool StructureCache::is_unit(const Element& a) { return units().contains(a.index()); }

std::optional<Element> StructureCache::inverse(const Element& a) {
  units();
  const std::uint64_t i = inv_[a.index()];
  if (i == kNoInverse) return std::nullopt;
  return ctx_.from_index(i);
}

void StructureCache::compute_idempotents() {
  const std::size_t L = ctx_.leaf_count();
  Scratch s;
  std::vector<std::uint32_t> sq(L);
  std::vector<bool> bits(ctx_.order(), false);
  ctx_.for_each([&](std::uint64_t i, CSpan a) {
    if ((i & 4095) == 0) ctx_.budget().check("idempotent enumeration");
    ctx_.mul_raw(sq, a, a, s);
    if (eq(sq, a)) bits[i] = true;
  });
  idem_ = ElementSet::from_bits(ctx_.order(), bits);
}

const ElementSet& StructureCache::idempotents() {
  std::call_once(idem_once_, [this] { compute_idempotents(); });
  return idem_;
}

void StructureCache::compute_nilpotents() {
  // x is nilpotent iff x^(2^s) = 0 once 2^s >= |R|: the nilpotency index
  // never exceeds the number of distinct powers.
  const std::size_t L = ctx_.leaf_count();
  const int squarings = std::bit_width(ctx_.order() - 1);
  Scratch s;
  std::vector<std::uint32_t> p(L), q(L);
  const std::vector<std::uint32_t> zero(L, 0);
  std::vector<bool> bits(ctx_.order(), false);
  ctx_.for_each([&](std::uint64_t i, CSpan a) {
    if ((i & 4095) == 0) ctx_.budget().check("nilpotent enumeration");
    std::copy(a.begin(), a.end(), p.begin());
    for (int t = 0; t < squarings && !eq(p, zero); ++t) {
      ctx_.mul_raw(q, p, p, s);
      std::swap(p, q);
    }
    if (eq(p, zero)) bits[i] = true;
  });
  nilp_ = ElementSet::from_bits(ctx_.order(), bits);
}

const ElementSet& StructureCache::nilpotents() {
  std::call_once(nilp_once_, [this] { compute_nilpotents(); });
  return nilp_;
}

std::optional<std::uint32_t> StructureCache::nilpotency_index(const Element& a) {
  ctx_.require(a, "nilpotency_index");
  Element p = a;
  std::unordered_set<std::uint64_t> seen;
  for (std::uint32_t n = 1;; ++n) {
    if (p.is_zero()) return n;
    if (!seen.insert(p.index()).second) return std::nullopt;
    p = p * a;
  }
}

void StructureCache::compute_jacobson() {
  // Left quasi-regularity; finiteness makes left-invertible = invertible.
  units();
  const std::size_t L = ctx_.leaf_count();
  Scratch s;
  std::vector<std::uint32_t> prod(L), t(L);
  const Element one = ctx_.one();
  std::vector<bool> bits(ctx_.order(), false);
  ctx_.for_each([&](std::uint64_t xi, CSpan x) {
    ctx_.budget().check("jacobson enumeration");
    const bool ok = ctx_.for_each_until([&](std::uint64_t, CSpan r) {
      ctx_.mul_raw(prod, r, x, s);
      ctx_.sub_raw(t, one.leaves(), prod);
      return units_.contains(ctx_.index_of(t));
    });
    if (ok) bits[xi] = true;
  });
  jac_ = ElementSet::from_bits(ctx_.order(), bits);
}

const ElementSet& StructureCache::jacobson() {
  std::call_once(jac_once_, [this] { compute_jacobson(); });
  return jac_;
}

bool StructureCache::in_jacobson(const Element& a) { return jacobson().contains(a.index()); }

void StructureCache::compute_qnil() {
  units();
  const std::size_t L = ctx_.leaf_count();
  Scratch s;
  std::vector<std::uint32_t> xr(L), rx(L), t(L);
  const Element one = ctx_.one();
  std::vector<bool> bits(ctx_.order(), false);
  ctx_.for_each([&](std::uint64_t xi, CSpan x) {
    ctx_.budget().check("qnil enumeration");
    const bool ok = ctx_.for_each_until([&](std::uint64_t, CSpan r) {
      ctx_.mul_raw(xr, x, r, s);
      ctx_.mul_raw(rx, r, x, s);
      if (!eq(xr, rx)) return true;  // r does not commute with x
      ctx_.add_raw(t, one.leaves(), xr);
      return units_.contains(ctx_.index_of(t));
    });
    if (ok) bits[xi] = true;
  });
  qnil_ = ElementSet::from_bits(ctx_.order(), bits);
}

const ElementSet& StructureCache::qnil() {
  std::call_once(qnil_once_, [this] { compute_qnil(); });
  return qnil_;
}

bool StructureCache::in_qnil(const Element& a) { return qnil().contains(a.index()); }

void StructureCache::compute_center() {
  const std::size_t L = ctx_.leaf_count();
  Scratch s;
  std::vector<std::uint32_t> xr(L), rx(L);
  std::vector<bool> bits(ctx_.order(), false);
  ctx_.for_each([&](std::uint64_t xi, CSpan x) {
    ctx_.budget().check("center enumeration");
    const bool ok = ctx_.for_each_until([&](std::uint64_t, CSpan r) {
      ctx_.mul_raw(xr, x, r, s);
      ctx_.mul_raw(rx, r, x, s);
      return eq(xr, rx);
    });
    if (ok) bits[xi] = true;
  });
  center_ = ElementSet::from_bits(ctx_.order(), bits);
}

const ElementSet& StructureCache::center() {
  std::call_once(center_once_, [this] { compute_center(); });
  return center_;
}

std::shared_ptr<const CommSet> StructureCache::commutant_of(const Element& a) {
  ctx_.require(a, "commutant");
  const std::uint64_t key = a.index();
  {
    std::lock_guard<std::mutex> lock(comm_mu_);
    auto it = comm_memo_.find(key);
    if (it != comm_memo_.end()) return it->second;
  }
  const std::size_t L = ctx_.leaf_count();
  Scratch s;
  std::vector<std::uint32_t> ax(L), xa(L);
  auto cs = std::make_shared<CommSet>();
  ctx_.for_each([&](std::uint64_t xi, CSpan x) {
    if ((xi & 4095) == 0) ctx_.budget().check("commutant enumeration");
    ctx_.mul_raw(ax, a.leaves(), x, s);
    ctx_.mul_raw(xa, x, a.leaves(), s);
    if (eq(ax, xa)) {
      cs->indices.push_back(xi);
      cs->flat.insert(cs->flat.end(), x.begin(), x.end());
    }
  });
  {
    std::lock_guard<std::mutex> lock(comm_mu_);
    if (comm_memo_entries_ + cs->size() <= kCommMemoBudget) {
      auto [it, inserted] = comm_memo_.emplace(key, cs);
      if (inserted) comm_memo_entries_ += cs->size();
      return it->second;
    }
  }
  return cs;
}

ElementSet StructureCache::commutant(const Element& a) {
  auto cs = commutant_of(a);
  return ElementSet(ctx_.order(), cs->indices);
}

bool StructureCache::in_double_commutant(const Element& x, const Element& a) {
  auto cs = commutant_of(a);
  const std::size_t L = ctx_.leaf_count();
  Scratch s;
  std::vector<std::uint32_t> xy(L), yx(L);
  for (std::size_t i = 0; i < cs->size(); ++i) {
    const CSpan y(cs->flat.data() + i * L, L);
    ctx_.mul_raw(xy, x.leaves(), y, s);
    ctx_.mul_raw(yx, y, x.leaves(), s);
    if (!eq(xy, yx)) return false;
  }
  return true;
}

ElementSet StructureCache::double_commutant(const Element& a, bool generator_pruning) {
  auto cs = commutant_of(a);
  const std::size_t L = ctx_.leaf_count();
  Scratch s;
  std::vector<bool> bits(ctx_.order(), false);

  if (!generator_pruning) {
    std::vector<std::uint32_t> xy(L), yx(L);
    ctx_.for_each([&](std::uint64_t xi, CSpan x) {
      if ((xi & 1023) == 0) ctx_.budget().check("double commutant");
      for (std::size_t i = 0; i < cs->size(); ++i) {
        const CSpan y(cs->flat.data() + i * L, L);
        ctx_.mul_raw(xy, x, y, s);
        ctx_.mul_raw(yx, y, x, s);
        if (!eq(xy, yx)) return;
      }
      bits[xi] = true;
    });
    return ElementSet::from_bits(ctx_.order(), bits);
  }

  // Greedy generating subset of comm(a) by subring closure, then filter
  // candidates against the generators only. Commuting with the generators
  // forces commuting with their closure, but survivors are still verified
  // against all of comm(a).
  std::vector<std::uint64_t> gens;
  std::vector<std::uint32_t> gen_flat;
  std::vector<bool> closed(ctx_.order(), false);
  auto rebuild_closure = [&] {
    std::fill(closed.begin(), closed.end(), false);
    std::vector<std::vector<std::uint32_t>> members;
    auto push = [&](CSpan v) {
      const std::uint64_t idx = ctx_.index_of(v);
      if (closed[idx]) return;
      closed[idx] = true;
      members.emplace_back(v.begin(), v.end());
    };
    push(ctx_.zero().leaves());
    push(ctx_.one().leaves());
    for (std::size_t g = 0; g < gens.size(); ++g)
      push(CSpan(gen_flat.data() + g * L, L));
    std::vector<std::uint32_t> t(L);
    for (std::size_t i = 0; i < members.size(); ++i) {
      ctx_.budget().check("closure");
      for (std::size_t j = 0; j <= i; ++j) {
        ctx_.add_raw(t, members[i], members[j]);
        push(t);
        ctx_.mul_raw(t, members[i], members[j], s);
        push(t);
        ctx_.mul_raw(t, members[j], members[i], s);
        push(t);
      }
    }
  };
  rebuild_closure();
  for (;;) {
    std::size_t missing = cs->size();
    for (std::size_t i = 0; i < cs->size(); ++i) {
      if (!closed[cs->indices[i]]) {
        missing = i;
        break;
      }
    }
    if (missing == cs->size()) break;
    gens.push_back(cs->indices[missing]);
    gen_flat.insert(gen_flat.end(), cs->flat.begin() + missing * L,
                    cs->flat.begin() + (missing + 1) * L);
    rebuild_closure();
  }

  std::vector<std::uint32_t> xy(L), yx(L);
  ctx_.for_each([&](std::uint64_t xi, CSpan x) {
    if ((xi & 1023) == 0) ctx_.budget().check("double commutant");
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const CSpan y(gen_flat.data() + g * L, L);
      ctx_.mul_raw(xy, x, y, s);
      ctx_.mul_raw(yx, y, x, s);
      if (!eq(xy, yx)) return;
    }
    // survivor: full verification against comm(a)
    for (std::size_t i = 0; i < cs->size(); ++i) {
      const CSpan y(cs->flat.data() + i * L, L);
      ctx_.mul_raw(xy, x, y, s);
      ctx_.mul_raw(yx, y, x, s);
      if (!eq(xy, yx)) return;
    }
    bits[xi] = true;
  });
  return ElementSet::from_bits(ctx_.order(), bits);
}

CornerRing StructureCache::corner(const Element& e) {
  ctx_.require(e, "corner");
  if (e * e != e) throw PreconditionError("corner() requires an idempotent");
  const std::size_t L = ctx_.leaf_count();
  Scratch s;
  std::vector<std::uint32_t> t(L), exe(L);
  std::vector<bool> bits(ctx_.order(), false);
  ctx_.for_each([&](std::uint64_t xi, CSpan x) {
    if ((xi & 4095) == 0) ctx_.budget().check("corner enumeration");
    ctx_.mul_raw(t, x, e.leaves(), s);
    ctx_.mul_raw(exe, e.leaves(), t, s);
    bits[ctx_.index_of(exe)] = true;
  });
  return CornerRing(ctx_, e, ElementSet::from_bits(ctx_.order(), bits));
}

bool CornerRing::is_unit_in_corner(const Element& x) const {
  parent_->require(x, "is_unit_in_corner");
  if (!carrier_.contains(x.index()))
    throw PreconditionError("is_unit_in_corner() argument is not in the corner");
  for (std::uint64_t yi : carrier_.indices()) {
    const Element y = parent_->from_index(yi);
    if (x * y == e_ && y * x == e_) return true;
  }
  return false;
}

bool StructureCache::is_local() {
  std::call_once(local_once_, [this] {
    units();
    const Element one = ctx_.one();
    const std::size_t L = ctx_.leaf_count();
    std::vector<std::uint32_t> t(L);
    local_ = ctx_.for_each_until([&](std::uint64_t ai, CSpan a) {
      if ((ai & 4095) == 0) ctx_.budget().check("local predicate");
      if (units_.contains(ai)) return true;
      ctx_.sub_raw(t, one.leaves(), a);
      return units_.contains(ctx_.index_of(t));
    });
  });
  return local_;
}

bool StructureCache::is_abelian() {
  std::call_once(abelian_once_, [this] {
    idempotents();
    const std::size_t L = ctx_.leaf_count();
    Scratch s;
    std::vector<std::uint32_t> ex(L), xe(L);
    abelian_ = true;
    for (std::uint64_t ei : idem_.indices()) {
      const Element e = ctx_.from_index(ei);
      const bool central = ctx_.for_each_until([&](std::uint64_t, CSpan x) {
        ctx_.mul_raw(ex, e.leaves(), x, s);
        ctx_.mul_raw(xe, x, e.leaves(), s);
        return eq(ex, xe);
      });
      ctx_.budget().check("abelian predicate");
      if (!central) {
        abelian_ = false;
        break;
      }
    }
  });
  return abelian_;
}

bool StructureCache::is_boolean_mod_j() {
  std::call_once(bmj_once_, [this] {
    jacobson();
    const std::size_t L = ctx_.leaf_count();
    Scratch s;
    std::vector<std::uint32_t> sq(L), t(L);
    bmj_ = ctx_.for_each_until([&](std::uint64_t ai, CSpan a) {
      if ((ai & 4095) == 0) ctx_.budget().check("boolean-mod-J predicate");
      ctx_.mul_raw(sq, a, a, s);
      ctx_.sub_raw(t, a, sq);
      return jac_.contains(ctx_.index_of(t));
    });
  });
  return bmj_;
}

bool StructureCache::is_uniquely_weakly_bleached() {
  std::call_once(uwb_once_, [this] {
    jacobson();
    const std::size_t L = ctx_.leaf_count();
    const std::uint64_t n = ctx_.order();
    Scratch s;
    std::vector<std::uint32_t> b(L), p(L), q(L), im(L);
    std::vector<bool> image(n);
    const Element one = ctx_.one();
    uwb_ = true;
    for (std::uint64_t ji : jac_.indices()) {
      const Element a = ctx_.from_index(ji);
      for (std::uint64_t j2 : jac_.indices()) {
        ctx_.budget().check("bleached predicate");
        const Element bj = ctx_.from_index(j2);
        ctx_.add_raw(b, one.leaves(), bj.leaves());  // b in 1 + J(R)
        for (int dir = 0; dir < 2 && uwb_; ++dir) {
          std::fill(image.begin(), image.end(), false);
          std::uint64_t count = 0;
          const bool injective = ctx_.for_each_until([&](std::uint64_t, CSpan x) {
            if (dir == 0) {  // x -> ax - xb
              ctx_.mul_raw(p, a.leaves(), x, s);
              ctx_.mul_raw(q, x, b, s);
            } else {  // x -> bx - xa
              ctx_.mul_raw(p, b, x, s);
              ctx_.mul_raw(q, x, a.leaves(), s);
            }
            ctx_.sub_raw(im, p, q);
            const std::uint64_t idx = ctx_.index_of(im);
            if (image[idx]) return false;
            image[idx] = true;
            ++count;
            return true;
          });
          if (!injective || count != n) uwb_ = false;
        }
        if (!uwb_) return;
      }
    }
  });
  return uwb_;
}

}  // namespace ringlab
