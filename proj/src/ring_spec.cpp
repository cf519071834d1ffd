#include "ringlab/ring_spec.hpp"

#include <cctype>
#include <utility>
#include <vector>

namespace ringlab {

struct RingSpec::Node {
  Kind kind;
  std::uint64_t n = 0;   // Zmod
  std::uint32_t k = 0;   // Matrix / Triangular
  std::shared_ptr<const Node> a;  // base, or left factor
  std::shared_ptr<const Node> b;  // right factor
};

RingSpec RingSpec::zmod(std::uint64_t n) {
  if (n < 1) throw PreconditionError("Zmod modulus must be >= 1");
  if (n > 0xFFFFFFFFull) throw PreconditionError("Zmod modulus must fit in 32 bits");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Zmod;
  node->n = n;
  return RingSpec(std::move(node));
}

RingSpec RingSpec::matrix(RingSpec base, std::uint32_t k) {
  if (k < 1) throw PreconditionError("matrix dimension must be >= 1");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Matrix;
  node->k = k;
  node->a = base.node_;
  return RingSpec(std::move(node));
}

RingSpec RingSpec::triangular(RingSpec base, std::uint32_t k) {
  if (k < 1) throw PreconditionError("triangular dimension must be >= 1");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Triangular;
  node->k = k;
  node->a = base.node_;
  return RingSpec(std::move(node));
}

RingSpec RingSpec::product(RingSpec left, RingSpec right) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Product;
  node->a = left.node_;
  node->b = right.node_;
  return RingSpec(std::move(node));
}

RingSpec::Kind RingSpec::kind() const noexcept { return node_->kind; }

std::uint64_t RingSpec::modulus() const {
  if (node_->kind != Kind::Zmod) throw PreconditionError("modulus() on non-Zmod spec");
  return node_->n;
}

std::uint32_t RingSpec::dim() const {
  if (node_->kind != Kind::Matrix && node_->kind != Kind::Triangular)
    throw PreconditionError("dim() on non-matrix spec");
  return node_->k;
}

RingSpec RingSpec::base() const {
  if (node_->kind != Kind::Matrix && node_->kind != Kind::Triangular)
    throw PreconditionError("base() on non-matrix spec");
  return RingSpec(node_->a);
}

RingSpec RingSpec::left() const {
  if (node_->kind != Kind::Product) throw PreconditionError("left() on non-product spec");
  return RingSpec(node_->a);
}

RingSpec RingSpec::right() const {
  if (node_->kind != Kind::Product) throw PreconditionError("right() on non-product spec");
  return RingSpec(node_->b);
}

namespace {

std::uint64_t mul_capped(std::uint64_t a, std::uint64_t b, std::uint64_t cap,
                         const std::string& spec_text) {
  if (a == 0 || b == 0) return 0;  // unreachable: orders are >= 1
  if (a > cap / b) throw OrderCapError(spec_text, cap);
  return a * b;
}

std::uint64_t pow_capped(std::uint64_t base, std::uint64_t exp, std::uint64_t cap,
                         const std::string& spec_text) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = mul_capped(r, base, cap, spec_text);
  return r;
}

}  // namespace

std::uint64_t RingSpec::order(std::uint64_t cap) const {
  if (cap > kAbsoluteOrderCap) cap = kAbsoluteOrderCap;
  const std::string text = to_string();
  std::uint64_t result = 0;
  switch (node_->kind) {
    case Kind::Zmod:
      result = node_->n;
      break;
    case Kind::Matrix: {
      const std::uint64_t sub = base().order(cap);
      result = pow_capped(sub, std::uint64_t{node_->k} * node_->k, cap, text);
      break;
    }
    case Kind::Triangular: {
      const std::uint64_t sub = base().order(cap);
      result = pow_capped(sub, std::uint64_t{node_->k} * (node_->k + 1) / 2, cap, text);
      break;
    }
    case Kind::Product:
      result = mul_capped(left().order(cap), right().order(cap), cap, text);
      break;
  }
  if (result > cap) throw OrderCapError(text, cap);
  return result;
}

std::string RingSpec::to_string() const {
  switch (node_->kind) {
    case Kind::Zmod:
      return "Z" + std::to_string(node_->n);
    case Kind::Matrix:
      return "M" + std::to_string(node_->k) + "(" + base().to_string() + ")";
    case Kind::Triangular:
      return "T" + std::to_string(node_->k) + "(" + base().to_string() + ")";
    case Kind::Product:
      return left().to_string() + "x" + right().to_string();
  }
  return {};
}

bool RingSpec::operator==(const RingSpec& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case Kind::Zmod:
      return node_->n == other.node_->n;
    case Kind::Matrix:
    case Kind::Triangular:
      return node_->k == other.node_->k && base() == other.base();
    case Kind::Product:
      return left() == other.left() && right() == other.right();
  }
  return false;
}

bool RingSpec::is_commutative() const {
  switch (node_->kind) {
    case Kind::Zmod:
      return true;
    case Kind::Matrix:
    case Kind::Triangular:
      // k = 1 collapses to the base ring; the base order-1 case is also
      // commutative regardless of k.
      return node_->k == 1 ? base().is_commutative()
                           : base().order(kAbsoluteOrderCap) == 1;
    case Kind::Product:
      return left().is_commutative() && right().is_commutative();
  }
  return false;
}

namespace {

class SpecParser {
 public:
  SpecParser(std::string_view text, std::uint64_t cap) : text_(text), cap_(cap) {}

  RingSpec parse() {
    RingSpec result = parse_spec();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError("trailing input", pos_, "end of input or 'x'");
    result.order(cap_);  // enforce the cap on the full spec
    return result;
  }

 private:
  RingSpec parse_spec() {
    RingSpec acc = parse_term();
    for (;;) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == 'x') {
        ++pos_;
        acc = RingSpec::product(acc, parse_term());
      } else {
        return acc;
      }
    }
  }

  RingSpec parse_term() {
    skip_ws();
    if (pos_ >= text_.size())
      throw ParseError("unexpected end of input", pos_, "'Z', 'M' or 'T'");
    const char c = text_[pos_];
    if (c == 'Z') {
      const std::size_t at = pos_++;
      const std::uint64_t n = parse_nat();
      if (n < 1) throw ParseError("invalid modulus", at, "modulus >= 1");
      if (n > 0xFFFFFFFFull) throw ParseError("modulus too large", at, "modulus < 2^32");
      return RingSpec::zmod(n);
    }
    if (c == 'M' || c == 'T') {
      const std::size_t at = pos_++;
      const std::uint64_t k = parse_nat();
      if (k < 1 || k > 0xFFFF) throw ParseError("invalid dimension", at, "dimension in [1, 65535]");
      expect('(');
      RingSpec inner = parse_spec();
      expect(')');
      return c == 'M' ? RingSpec::matrix(inner, static_cast<std::uint32_t>(k))
                      : RingSpec::triangular(inner, static_cast<std::uint32_t>(k));
    }
    throw ParseError("unexpected character", pos_, "'Z', 'M' or 'T'");
  }

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

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::uint64_t cap_;
  std::size_t pos_ = 0;
};

}  // namespace

RingSpec parse_ring_spec(std::string_view text, std::uint64_t cap) {
  return SpecParser(text, cap).parse();
}

}  // namespace ringlab
