#include "ringlab/ring_context.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "ringlab/structure.hpp"

namespace ringlab {

// Shape nodes are built post-order (children before parents), so the root
// is always the last node and child ids are smaller than their parent's.
struct RingContext::ShapeNode {
  RingSpec::Kind kind;
  std::uint32_t mod = 0;       // Zmod
  std::uint32_t k = 0;         // Matrix / Triangular
  std::uint32_t child = 0;     // sub shape, or left factor
  std::uint32_t child2 = 0;    // right factor
  std::uint32_t width = 0;     // leaf slots
  std::uint64_t order = 1;     // order of the subring this node describes
  std::uint32_t scratch_off = 0;
  std::uint32_t flat_off = 0;  // offset of this node's moduli run in flat_mods_
};

namespace {

inline std::uint32_t tri_pos(std::uint32_t r, std::uint32_t c, std::uint32_t k) {
  // row-major over the stored upper entries: (0,0),(0,1),...,(1,1),...
  return r * k - r * (r - 1) / 2 + (c - r);
}

thread_local Scratch tls_scratch;

}  // namespace

std::uint32_t RingContext::build_shape(const RingSpec& s) {
  ShapeNode node;
  node.kind = s.kind();
  switch (s.kind()) {
    case RingSpec::Kind::Zmod:
      node.mod = static_cast<std::uint32_t>(s.modulus());
      node.width = 1;
      node.order = s.modulus();
      break;
    case RingSpec::Kind::Matrix:
    case RingSpec::Kind::Triangular: {
      node.k = s.dim();
      node.child = build_shape(s.base());
      const ShapeNode& sub = nodes_[node.child];
      const std::uint32_t blocks = s.kind() == RingSpec::Kind::Matrix
                                       ? node.k * node.k
                                       : node.k * (node.k + 1) / 2;
      node.width = blocks * sub.width;
      node.order = 1;
      for (std::uint32_t i = 0; i < blocks; ++i) node.order *= sub.order;
      break;
    }
    case RingSpec::Kind::Product: {
      node.child = build_shape(s.left());
      node.child2 = build_shape(s.right());
      node.width = nodes_[node.child].width + nodes_[node.child2].width;
      node.order = nodes_[node.child].order * nodes_[node.child2].order;
      break;
    }
  }
  nodes_.push_back(node);
  return static_cast<std::uint32_t>(nodes_.size() - 1);
}

std::uint32_t RingContext::assign_scratch(std::uint32_t id, std::uint32_t base) {
  // Returns the number of scratch slots the subtree uses above `base`.
  ShapeNode& nd = nodes_[id];
  switch (nd.kind) {
    case RingSpec::Kind::Zmod:
      return 0;
    case RingSpec::Kind::Product:
      // Children multiply sequentially, so they may share the region.
      return std::max(assign_scratch(nd.child, base), assign_scratch(nd.child2, base));
    case RingSpec::Kind::Matrix:
    case RingSpec::Kind::Triangular: {
      nd.scratch_off = base;
      const std::uint32_t w = nodes_[nd.child].width;
      return w + assign_scratch(nd.child, base + w);
    }
  }
  return 0;
}

RingContext::RingContext(RingSpec spec, std::uint64_t cap, std::shared_ptr<const Budget> budget)
    : spec_(std::move(spec)), cap_(std::min(cap, kAbsoluteOrderCap)), budget_(std::move(budget)) {
  order_ = spec_.order(cap_);  // throws OrderCapError beyond the cap
  build_shape(spec_);
  scratch_size_ = assign_scratch(root(), 0);

  // Per-node flattened moduli runs (children have smaller ids).
  std::vector<std::vector<std::uint32_t>> expansion(nodes_.size());
  for (std::uint32_t id = 0; id < nodes_.size(); ++id) {
    auto& e = expansion[id];
    const ShapeNode& nd = nodes_[id];
    switch (nd.kind) {
      case RingSpec::Kind::Zmod:
        e.push_back(nd.mod);
        break;
      case RingSpec::Kind::Matrix:
      case RingSpec::Kind::Triangular: {
        const std::uint32_t blocks =
            nd.kind == RingSpec::Kind::Matrix ? nd.k * nd.k : nd.k * (nd.k + 1) / 2;
        for (std::uint32_t i = 0; i < blocks; ++i)
          e.insert(e.end(), expansion[nd.child].begin(), expansion[nd.child].end());
        break;
      }
      case RingSpec::Kind::Product:
        e = expansion[nd.child];
        e.insert(e.end(), expansion[nd.child2].begin(), expansion[nd.child2].end());
        break;
    }
  }
  for (std::uint32_t id = 0; id < nodes_.size(); ++id) {
    nodes_[id].flat_off = static_cast<std::uint32_t>(flat_mods_.size());
    flat_mods_.insert(flat_mods_.end(), expansion[id].begin(), expansion[id].end());
  }
  leaf_mod_ = expansion.back();

  place_.resize(leaf_mod_.size());
  std::uint64_t p = 1;
  for (std::size_t i = 0; i < leaf_mod_.size(); ++i) {
    place_[i] = p;
    p *= leaf_mod_[i];
  }

  one_.assign(leaf_mod_.size(), 0);
  one_node(root(), one_.data());

  characteristic_ = 1;
  for (std::size_t i = 0; i < leaf_mod_.size(); ++i) {
    if (one_[i] != 0) characteristic_ = std::lcm(characteristic_, std::uint64_t{leaf_mod_[i]});
  }

  switch (spec_.kind()) {
    case RingSpec::Kind::Matrix:
    case RingSpec::Kind::Triangular:
      base_ctx_ = std::make_shared<const RingContext>(spec_.base(), cap_, budget_);
      break;
    case RingSpec::Kind::Product:
      left_ctx_ = std::make_shared<const RingContext>(spec_.left(), cap_, budget_);
      right_ctx_ = std::make_shared<const RingContext>(spec_.right(), cap_, budget_);
      break;
    default:
      break;
  }
}

RingContext::~RingContext() = default;

std::uint32_t RingContext::root() const {
  return static_cast<std::uint32_t>(nodes_.size() - 1);
}

// ---- arithmetic kernels ----

void RingContext::add_raw(std::span<std::uint32_t> dst, std::span<const std::uint32_t> a,
                          std::span<const std::uint32_t> b) const {
  for (std::size_t i = 0; i < leaf_mod_.size(); ++i) {
    const std::uint64_t s = std::uint64_t{a[i]} + b[i];
    dst[i] = static_cast<std::uint32_t>(s >= leaf_mod_[i] ? s - leaf_mod_[i] : s);
  }
}

void RingContext::sub_raw(std::span<std::uint32_t> dst, std::span<const std::uint32_t> a,
                          std::span<const std::uint32_t> b) const {
  for (std::size_t i = 0; i < leaf_mod_.size(); ++i)
    dst[i] = a[i] >= b[i] ? a[i] - b[i]
                          : static_cast<std::uint32_t>(a[i] + (leaf_mod_[i] - b[i]));
}

void RingContext::neg_raw(std::span<std::uint32_t> dst, std::span<const std::uint32_t> a) const {
  for (std::size_t i = 0; i < leaf_mod_.size(); ++i)
    dst[i] = a[i] == 0 ? 0 : leaf_mod_[i] - a[i];
}

void RingContext::mul_node(std::uint32_t id, std::uint32_t* dst, const std::uint32_t* a,
                           const std::uint32_t* b, std::uint32_t* scratch) const {
  const ShapeNode& nd = nodes_[id];
  switch (nd.kind) {
    case RingSpec::Kind::Zmod:
      dst[0] = static_cast<std::uint32_t>((std::uint64_t{a[0]} * b[0]) % nd.mod);
      return;
    case RingSpec::Kind::Product: {
      const std::uint32_t wl = nodes_[nd.child].width;
      mul_node(nd.child, dst, a, b, scratch);
      mul_node(nd.child2, dst + wl, a + wl, b + wl, scratch);
      return;
    }
    case RingSpec::Kind::Matrix: {
      const ShapeNode& sub = nodes_[nd.child];
      const std::uint32_t w = sub.width;
      const std::uint32_t* mods = flat_mods_.data() + sub.flat_off;
      std::uint32_t* tmp = scratch + nd.scratch_off;
      const std::uint32_t k = nd.k;
      for (std::uint32_t r = 0; r < k; ++r) {
        for (std::uint32_t c = 0; c < k; ++c) {
          std::uint32_t* d = dst + (r * k + c) * w;
          std::fill(d, d + w, 0u);
          for (std::uint32_t m = 0; m < k; ++m) {
            mul_node(nd.child, tmp, a + (r * k + m) * w, b + (m * k + c) * w, scratch);
            for (std::uint32_t i = 0; i < w; ++i) {
              const std::uint64_t s = std::uint64_t{d[i]} + tmp[i];
              d[i] = static_cast<std::uint32_t>(s >= mods[i] ? s - mods[i] : s);
            }
          }
        }
      }
      return;
    }
    case RingSpec::Kind::Triangular: {
      const ShapeNode& sub = nodes_[nd.child];
      const std::uint32_t w = sub.width;
      const std::uint32_t* mods = flat_mods_.data() + sub.flat_off;
      std::uint32_t* tmp = scratch + nd.scratch_off;
      const std::uint32_t k = nd.k;
      for (std::uint32_t r = 0; r < k; ++r) {
        for (std::uint32_t c = r; c < k; ++c) {
          std::uint32_t* d = dst + tri_pos(r, c, k) * w;
          std::fill(d, d + w, 0u);
          for (std::uint32_t m = r; m <= c; ++m) {
            mul_node(nd.child, tmp, a + tri_pos(r, m, k) * w, b + tri_pos(m, c, k) * w,
                     scratch);
            for (std::uint32_t i = 0; i < w; ++i) {
              const std::uint64_t s = std::uint64_t{d[i]} + tmp[i];
              d[i] = static_cast<std::uint32_t>(s >= mods[i] ? s - mods[i] : s);
            }
          }
        }
      }
      return;
    }
  }
}

void RingContext::mul_raw(std::span<std::uint32_t> dst, std::span<const std::uint32_t> a,
                          std::span<const std::uint32_t> b, Scratch& scratch) const {
  if (scratch.buf.size() < scratch_size_) scratch.buf.resize(scratch_size_);
  mul_node(root(), dst.data(), a.data(), b.data(), scratch.buf.data());
}

void RingContext::one_node(std::uint32_t id, std::uint32_t* dst) const {
  // Assumes dst is pre-zeroed; writes only the identity's nonzero leaves.
  const ShapeNode& nd = nodes_[id];
  switch (nd.kind) {
    case RingSpec::Kind::Zmod:
      dst[0] = nd.mod > 1 ? 1 : 0;
      return;
    case RingSpec::Kind::Matrix: {
      const std::uint32_t w = nodes_[nd.child].width;
      for (std::uint32_t d = 0; d < nd.k; ++d) one_node(nd.child, dst + (d * nd.k + d) * w);
      return;
    }
    case RingSpec::Kind::Triangular: {
      const std::uint32_t w = nodes_[nd.child].width;
      for (std::uint32_t d = 0; d < nd.k; ++d)
        one_node(nd.child, dst + tri_pos(d, d, nd.k) * w);
      return;
    }
    case RingSpec::Kind::Product: {
      one_node(nd.child, dst);
      one_node(nd.child2, dst + nodes_[nd.child].width);
      return;
    }
  }
}

void RingContext::one_raw(std::span<std::uint32_t> dst) const {
  std::copy(one_.begin(), one_.end(), dst.begin());
}

void RingContext::decode_raw(std::uint64_t idx, std::span<std::uint32_t> dst) const {
  for (std::size_t i = 0; i < leaf_mod_.size(); ++i) {
    dst[i] = static_cast<std::uint32_t>(idx % leaf_mod_[i]);
    idx /= leaf_mod_[i];
  }
}

std::uint64_t RingContext::index_of(std::span<const std::uint32_t> leaves) const {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < leaf_mod_.size(); ++i) idx += leaves[i] * place_[i];
  return idx;
}

// ---- element-level API ----

Element RingContext::zero() const {
  return Element(this, std::vector<std::uint32_t>(leaf_count(), 0));
}

Element RingContext::one() const { return Element(this, one_); }

Element RingContext::from_index(std::uint64_t idx) const {
  if (idx >= order_)
    throw PreconditionError("canonical index " + std::to_string(idx) + " out of range for " +
                            spec_.to_string());
  std::vector<std::uint32_t> v(leaf_count());
  decode_raw(idx, v);
  return Element(this, std::move(v));
}

Element RingContext::from_leaves(std::span<const std::uint32_t> leaves) const {
  return Element(this, std::vector<std::uint32_t>(leaves.begin(), leaves.end()));
}

Element RingContext::from_int(std::int64_t c) const { return scalar_mul(c, one()); }

bool RingContext::owns(const Element& a) const {
  if (!a.valid()) return false;
  return a.ctx_ == this || a.ctx_->spec_ == spec_;
}

void RingContext::require(const Element& a, const char* where) const {
  if (!owns(a))
    throw RingMismatchError(std::string(where) + " operand does not belong to " +
                            spec_.to_string());
}

Element RingContext::add(const Element& a, const Element& b) const {
  require(a, "add");
  require(b, "add");
  std::vector<std::uint32_t> out(leaf_count());
  add_raw(out, a.v_, b.v_);
  return Element(this, std::move(out));
}

Element RingContext::sub(const Element& a, const Element& b) const {
  require(a, "sub");
  require(b, "sub");
  std::vector<std::uint32_t> out(leaf_count());
  sub_raw(out, a.v_, b.v_);
  return Element(this, std::move(out));
}

Element RingContext::neg(const Element& a) const {
  require(a, "neg");
  std::vector<std::uint32_t> out(leaf_count());
  neg_raw(out, a.v_);
  return Element(this, std::move(out));
}

Element RingContext::mul(const Element& a, const Element& b) const {
  require(a, "mul");
  require(b, "mul");
  std::vector<std::uint32_t> out(leaf_count());
  mul_raw(out, a.v_, b.v_, tls_scratch);
  return Element(this, std::move(out));
}

Element RingContext::scalar_mul(std::int64_t c, const Element& a) const {
  require(a, "scalar_mul");
  std::vector<std::uint32_t> out(leaf_count());
  for (std::size_t i = 0; i < leaf_mod_.size(); ++i) {
    const std::int64_t m = static_cast<std::int64_t>(leaf_mod_[i]);
    std::int64_t r = c % m;
    if (r < 0) r += m;
    out[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(r) * a.v_[i]) %
                                        leaf_mod_[i]);
  }
  return Element(this, std::move(out));
}

Element RingContext::pow(const Element& a, std::uint64_t e) const {
  require(a, "pow");
  Element result = one();
  Element base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

// ---- structural decomposition ----

const RingContext& RingContext::base_context() const {
  if (!base_ctx_) throw PreconditionError("base_context() on non-matrix ring");
  return *base_ctx_;
}

const RingContext& RingContext::left_context() const {
  if (!left_ctx_) throw PreconditionError("left_context() on non-product ring");
  return *left_ctx_;
}

const RingContext& RingContext::right_context() const {
  if (!right_ctx_) throw PreconditionError("right_context() on non-product ring");
  return *right_ctx_;
}

Element RingContext::entry(const Element& a, std::uint32_t r, std::uint32_t c) const {
  require(a, "entry");
  const ShapeNode& nd = nodes_[root()];
  if (nd.kind != RingSpec::Kind::Matrix && nd.kind != RingSpec::Kind::Triangular)
    throw PreconditionError("entry() on non-matrix ring");
  if (r >= nd.k || c >= nd.k) throw PreconditionError("entry() index out of range");
  const RingContext& base = base_context();
  if (nd.kind == RingSpec::Kind::Triangular && r > c) return base.zero();
  const std::uint32_t w = nodes_[nd.child].width;
  const std::uint32_t off = (nd.kind == RingSpec::Kind::Matrix ? (r * nd.k + c)
                                                               : tri_pos(r, c, nd.k)) *
                            w;
  return base.from_leaves(a.leaves().subspan(off, w));
}

Element RingContext::assemble_matrix(const std::vector<Element>& row_major) const {
  const ShapeNode& nd = nodes_[root()];
  if (nd.kind != RingSpec::Kind::Matrix && nd.kind != RingSpec::Kind::Triangular)
    throw PreconditionError("assemble_matrix() on non-matrix ring");
  const std::uint32_t k = nd.k;
  if (row_major.size() != std::size_t{k} * k)
    throw PreconditionError("assemble_matrix() needs a full k*k grid");
  const RingContext& base = base_context();
  const std::uint32_t w = nodes_[nd.child].width;
  std::vector<std::uint32_t> out(leaf_count(), 0);
  for (std::uint32_t r = 0; r < k; ++r) {
    for (std::uint32_t c = 0; c < k; ++c) {
      const Element& cell = row_major[r * k + c];
      base.require(cell, "assemble_matrix");
      if (nd.kind == RingSpec::Kind::Triangular && r > c) {
        if (!cell.is_zero())
          throw PreconditionError("triangular element has nonzero entry below the diagonal");
        continue;
      }
      const std::uint32_t off =
          (nd.kind == RingSpec::Kind::Matrix ? (r * k + c) : tri_pos(r, c, k)) * w;
      std::copy(cell.leaves().begin(), cell.leaves().end(), out.begin() + off);
    }
  }
  return Element(this, std::move(out));
}

std::pair<Element, Element> RingContext::split_product(const Element& a) const {
  require(a, "split_product");
  const ShapeNode& nd = nodes_[root()];
  if (nd.kind != RingSpec::Kind::Product)
    throw PreconditionError("split_product() on non-product ring");
  const std::uint32_t wl = nodes_[nd.child].width;
  return {left_context().from_leaves(a.leaves().subspan(0, wl)),
          right_context().from_leaves(a.leaves().subspan(wl))};
}

Element RingContext::assemble_product(const Element& l, const Element& r) const {
  const ShapeNode& nd = nodes_[root()];
  if (nd.kind != RingSpec::Kind::Product)
    throw PreconditionError("assemble_product() on non-product ring");
  left_context().require(l, "assemble_product");
  right_context().require(r, "assemble_product");
  std::vector<std::uint32_t> out;
  out.reserve(leaf_count());
  out.insert(out.end(), l.leaves().begin(), l.leaves().end());
  out.insert(out.end(), r.leaves().begin(), r.leaves().end());
  return Element(this, std::move(out));
}

// ---- literals ----

namespace {

class ElementParser {
 public:
  ElementParser(const RingContext& ctx, std::string_view text) : ctx_(ctx), text_(text) {}

  std::vector<std::uint32_t> parse() {
    std::vector<std::uint32_t> out(ctx_.leaf_count(), 0);
    parse_node(ctx_.shape_root(), out.data());
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("trailing input", pos_, "end of element literal");
    return out;
  }

 private:
  void parse_node(std::uint32_t id, std::uint32_t* dst);

  std::uint64_t parse_nat() {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw ParseError("missing number", pos_, "a decimal number");
    std::uint64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const std::uint64_t digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > (UINT64_MAX - digit) / 10)
        throw ParseError("number too large", pos_, "a smaller number");
      value = value * 10 + digit;
      ++pos_;
    }
    return value;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw ParseError("unexpected input", pos_, std::string("'") + c + "'");
    ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  const RingContext& ctx_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

void ElementParser::parse_node(std::uint32_t id, std::uint32_t* dst) {
  skip_ws();
  if (peek_is('#')) {
    const std::size_t at = pos_++;
    const std::uint64_t idx = parse_nat();
    if (!ctx_.shape_decode(id, idx, dst))
      throw ParseError("canonical index out of range", at, "index < subring order");
    return;
  }
  switch (ctx_.shape_kind(id)) {
    case RingSpec::Kind::Zmod: {
      skip_ws();
      bool negative = false;
      if (pos_ < text_.size() && text_[pos_] == '-') {
        negative = true;
        ++pos_;
      }
      const std::uint64_t raw = parse_nat();
      const std::uint64_t m = ctx_.shape_mod(id);
      std::uint64_t r = raw % m;
      if (negative && r != 0) r = m - r;
      dst[0] = static_cast<std::uint32_t>(r);
      return;
    }
    case RingSpec::Kind::Matrix:
    case RingSpec::Kind::Triangular: {
      const bool tri = ctx_.shape_kind(id) == RingSpec::Kind::Triangular;
      const std::uint32_t k = ctx_.shape_dim(id);
      const std::uint32_t child = ctx_.shape_child(id);
      const std::uint32_t w = ctx_.shape_width(child);
      std::vector<std::uint32_t> below(w);
      expect('[');
      for (std::uint32_t r = 0; r < k; ++r) {
        if (r > 0) expect(',');
        expect('[');
        for (std::uint32_t c = 0; c < k; ++c) {
          if (c > 0) expect(',');
          if (tri && r > c) {
            const std::size_t at = pos_;
            std::fill(below.begin(), below.end(), 0u);
            parse_node(child, below.data());
            if (std::any_of(below.begin(), below.end(), [](std::uint32_t x) { return x != 0; }))
              throw ParseError("below-diagonal entry must be zero", at, "a zero entry");
          } else {
            const std::uint32_t off =
                (tri ? tri_pos(r, c, k) : r * k + c) * w;
            parse_node(child, dst + off);
          }
        }
        expect(']');
      }
      expect(']');
      return;
    }
    case RingSpec::Kind::Product: {
      expect('(');
      parse_node(ctx_.shape_child(id), dst);
      expect(',');
      parse_node(ctx_.shape_child2(id), dst + ctx_.shape_width(ctx_.shape_child(id)));
      expect(')');
      return;
    }
  }
}

Element RingContext::parse_element(std::string_view text) const {
  return Element(this, ElementParser(*this, text).parse());
}

void RingContext::format_node(std::uint32_t id, const std::uint32_t* src, std::string& out) const {
  const ShapeNode& nd = nodes_[id];
  switch (nd.kind) {
    case RingSpec::Kind::Zmod:
      out += std::to_string(src[0]);
      return;
    case RingSpec::Kind::Matrix:
    case RingSpec::Kind::Triangular: {
      const bool tri = nd.kind == RingSpec::Kind::Triangular;
      const std::uint32_t w = nodes_[nd.child].width;
      const std::vector<std::uint32_t> zero_block(w, 0);
      out += '[';
      for (std::uint32_t r = 0; r < nd.k; ++r) {
        if (r > 0) out += ',';
        out += '[';
        for (std::uint32_t c = 0; c < nd.k; ++c) {
          if (c > 0) out += ',';
          const std::uint32_t* block =
              tri && r > c ? zero_block.data()
                           : src + (tri ? tri_pos(r, c, nd.k) : r * nd.k + c) * w;
          format_node(nd.child, block, out);
        }
        out += ']';
      }
      out += ']';
      return;
    }
    case RingSpec::Kind::Product:
      out += '(';
      format_node(nd.child, src, out);
      out += ',';
      format_node(nd.child2, src + nodes_[nd.child].width, out);
      out += ')';
      return;
  }
}

std::string RingContext::format(const Element& a) const {
  require(a, "format");
  std::string out;
  format_node(root(), a.leaves().data(), out);
  return out;
}

// ---- shape introspection used by the literal parser ----

std::uint32_t RingContext::shape_root() const { return root(); }
RingSpec::Kind RingContext::shape_kind(std::uint32_t id) const { return nodes_[id].kind; }
std::uint32_t RingContext::shape_mod(std::uint32_t id) const { return nodes_[id].mod; }
std::uint32_t RingContext::shape_dim(std::uint32_t id) const { return nodes_[id].k; }
std::uint32_t RingContext::shape_child(std::uint32_t id) const { return nodes_[id].child; }
std::uint32_t RingContext::shape_child2(std::uint32_t id) const { return nodes_[id].child2; }
std::uint32_t RingContext::shape_width(std::uint32_t id) const { return nodes_[id].width; }

bool RingContext::shape_decode(std::uint32_t id, std::uint64_t idx, std::uint32_t* dst) const {
  const ShapeNode& nd = nodes_[id];
  if (idx >= nd.order) return false;
  const std::uint32_t* mods = flat_mods_.data() + nd.flat_off;
  for (std::uint32_t i = 0; i < nd.width; ++i) {
    dst[i] = static_cast<std::uint32_t>(idx % mods[i]);
    idx /= mods[i];
  }
  return true;
}

// ---- Element methods ----

std::uint64_t Element::index() const { return ctx_->index_of(v_); }
Element Element::operator+(const Element& o) const { return ctx_->add(*this, o); }
Element Element::operator-(const Element& o) const { return ctx_->sub(*this, o); }
Element Element::operator-() const { return ctx_->neg(*this); }
Element Element::operator*(const Element& o) const { return ctx_->mul(*this, o); }

bool Element::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](std::uint32_t x) { return x == 0; });
}

bool Element::is_one() const { return ctx_ && *this == ctx_->one(); }

std::string Element::to_string() const { return ctx_->format(*this); }

}  // namespace ringlab
