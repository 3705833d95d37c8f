#pragma once

// Exact rational scalars and their two-point extension with +/-infinity.
// All coordinate arithmetic in the library goes through these types; no
// floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <stdexcept>
#include <string>

namespace adjsp {

using Rat = boost::multiprecision::cpp_rational;

inline std::string rat_to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(boost::multiprecision::cpp_int(s));
    boost::multiprecision::cpp_int num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rat(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational literal: " + s);
  }
}

// A rational extended with -inf / +inf; total order with infinities at the
// extremes. Arithmetic is deliberately not defined on infinite values.
class ExtRat {
 public:
  ExtRat() : kind_(Kind::Finite), value_(0) {}
  ExtRat(Rat v) : kind_(Kind::Finite), value_(std::move(v)) {}
  ExtRat(int v) : kind_(Kind::Finite), value_(v) {}

  static ExtRat neg_inf() { return ExtRat(Kind::NegInf); }
  static ExtRat pos_inf() { return ExtRat(Kind::PosInf); }

  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }

  const Rat& finite() const {
    if (!is_finite()) throw std::logic_error("ExtRat: infinite value has no rational part");
    return value_;
  }

  friend bool operator==(const ExtRat& a, const ExtRat& b) {
    if (a.kind_ != b.kind_) return false;
    return a.kind_ != Kind::Finite || a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b) {
    auto rank = [](Kind k) { return k == Kind::NegInf ? 0 : k == Kind::Finite ? 1 : 2; };
    if (rank(a.kind_) != rank(b.kind_)) return rank(a.kind_) <=> rank(b.kind_);
    if (a.kind_ != Kind::Finite) return std::strong_ordering::equal;
    return a.value_ < b.value_   ? std::strong_ordering::less
           : a.value_ > b.value_ ? std::strong_ordering::greater
                                 : std::strong_ordering::equal;
  }

  std::string str() const {
    switch (kind_) {
      case Kind::NegInf: return "-inf";
      case Kind::PosInf: return "inf";
      default: return rat_to_string(value_);
    }
  }

 private:
  enum class Kind { NegInf, Finite, PosInf };
  explicit ExtRat(Kind k) : kind_(k), value_(0) {}
  Kind kind_;
  Rat value_;
};

inline ExtRat ext_from_string(const std::string& s) {
  if (s == "-inf") return ExtRat::neg_inf();
  if (s == "inf" || s == "+inf") return ExtRat::pos_inf();
  return ExtRat(rat_from_string(s));
}

}  // namespace adjsp
