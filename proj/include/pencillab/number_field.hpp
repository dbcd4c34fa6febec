#pragma once

#include "pencillab/errors.hpp"
#include "pencillab/upoly.hpp"

#include <memory>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

namespace pencillab {

// Thrown when an inversion in Q[t]/(m) meets a zero divisor. Carries a proper
// monic factor of m; callers split m = factor * (m/factor) and redo the
// computation per branch. This is the whole mechanism that lets the rest of
// the code pretend every modulus is irreducible.
struct ZeroDivisorEncountered : std::runtime_error {
  UPolyQ factor;
  UPolyQ modulus;
  ZeroDivisorEncountered(UPolyQ f, UPolyQ m)
      : std::runtime_error("zero divisor modulo " + uni_to_string(m, "t")),
        factor(std::move(f)),
        modulus(std::move(m)) {}
};

class NumberFieldContext;
using NFCtx = std::shared_ptr<const NumberFieldContext>;

class NumberFieldContext {
 public:
  // Modulus must be squarefree of degree >= 1; it is stored monic. Reducible
  // moduli are legal (dynamic evaluation), irreducibility is never tested.
  static NFCtx make(UPolyQ modulus) {
    modulus = uni_monic(modulus);
    if (modulus.degree() < 1) throw std::invalid_argument("number field modulus must be nonconstant");
    if (uni_gcd(modulus, modulus.derivative()).degree() != 0)
      throw std::invalid_argument("number field modulus must be squarefree");
    return NFCtx(new NumberFieldContext(std::move(modulus)));
  }

  const UPolyQ& modulus() const { return m_; }
  int degree() const { return m_.degree(); }

 private:
  explicit NumberFieldContext(UPolyQ m) : m_(std::move(m)) {}
  UPolyQ m_;
};

inline bool same_context(const NFCtx& a, const NFCtx& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->modulus() == b->modulus();
}

// Element of Q or of Q[t]/(m). A null context means plain rational; mixed
// arithmetic promotes the rational side. Residues are kept reduced mod m.
class NumberFieldElement {
 public:
  NumberFieldElement() = default;
  NumberFieldElement(long n) : r_(UPolyQ::constant(BigRational(n))) {}
  NumberFieldElement(const BigRational& q) : r_(UPolyQ::constant(q)) {}
  NumberFieldElement(NFCtx ctx, UPolyQ r) : ctx_(std::move(ctx)), r_(std::move(r)) { reduce(); }

  static NumberFieldElement generator(NFCtx ctx) {
    return NumberFieldElement(std::move(ctx), UPolyQ::variable());
  }

  const NFCtx& ctx() const { return ctx_; }
  const UPolyQ& residue() const { return r_; }
  bool zero() const { return r_.zero(); }
  bool is_rational() const { return r_.degree() <= 0; }
  BigRational rational_value() const {
    if (!is_rational()) throw std::logic_error("element is not rational");
    return r_.coeff(0);
  }

  NumberFieldElement operator-() const {
    NumberFieldElement x = *this;
    x.r_ = -x.r_;
    return x;
  }

  friend NumberFieldElement operator+(NumberFieldElement a, NumberFieldElement b) {
    join(a, b);
    return NumberFieldElement(a.ctx_, a.r_ + b.r_);
  }
  friend NumberFieldElement operator-(NumberFieldElement a, NumberFieldElement b) {
    join(a, b);
    return NumberFieldElement(a.ctx_, a.r_ - b.r_);
  }
  friend NumberFieldElement operator*(NumberFieldElement a, NumberFieldElement b) {
    join(a, b);
    return NumberFieldElement(a.ctx_, a.r_ * b.r_);
  }
  friend NumberFieldElement operator/(NumberFieldElement a, const NumberFieldElement& b) {
    return a * nf_invert(b);
  }

  friend bool operator==(NumberFieldElement a, NumberFieldElement b) {
    join(a, b);
    return a.r_ == b.r_;
  }
  friend bool operator!=(const NumberFieldElement& a, const NumberFieldElement& b) { return !(a == b); }

  // Inversion by extended Euclid; a nontrivial gcd with the modulus is the
  // dynamic-evaluation split signal, not an error state.
  friend NumberFieldElement nf_invert(const NumberFieldElement& a) {
    if (a.r_.zero()) throw std::domain_error("division by zero");
    if (!a.ctx_) return NumberFieldElement(BigRational(1) / a.r_.coeff(0));
    const UPolyQ& m = a.ctx_->modulus();
    auto e = uni_ext_gcd(a.r_, m);
    if (e.g.degree() == 0) return NumberFieldElement(a.ctx_, e.u);
    if (e.g.degree() == m.degree()) throw std::domain_error("division by zero");
    throw ZeroDivisorEncountered(e.g, m);
  }

  std::string to_string(const std::string& gen = "t") const { return uni_to_string(r_, gen); }

 private:
  NFCtx ctx_;
  UPolyQ r_;

  void reduce() {
    if (ctx_ && r_.degree() >= ctx_->degree()) r_ = uni_divmod(r_, ctx_->modulus()).second;
  }
  static void join(NumberFieldElement& a, NumberFieldElement& b) {
    if (same_context(a.ctx_, b.ctx_)) {
      if (!a.ctx_) a.ctx_ = b.ctx_;
      return;
    }
    if (!a.ctx_) {
      a.ctx_ = b.ctx_;
      return;
    }
    if (!b.ctx_) {
      b.ctx_ = a.ctx_;
      return;
    }
    throw std::logic_error("mixed number field contexts");
  }
};

inline bool is_zero(const NumberFieldElement& a) { return a.zero(); }

// Runs fn over every branch of Q[t]/(m), splitting m whenever fn trips a zero
// divisor of this modulus. Results come back as (branch modulus, value) with
// the branch moduli pairwise coprime and their product equal to m. Splits of
// unrelated (nested) moduli propagate out untouched.
template <class Fn>
auto for_each_branch(const UPolyQ& m, Fn&& fn)
    -> std::vector<std::pair<UPolyQ, std::invoke_result_t<Fn, NFCtx>>> {
  using R = std::invoke_result_t<Fn, NFCtx>;
  std::vector<std::pair<UPolyQ, R>> done;
  std::vector<UPolyQ> todo{uni_monic(m)};
  while (!todo.empty()) {
    UPolyQ mod = todo.back();
    todo.pop_back();
    try {
      NFCtx ctx = NumberFieldContext::make(mod);
      done.emplace_back(mod, fn(ctx));
    } catch (const ZeroDivisorEncountered& z) {
      if (z.modulus != mod) throw;
      todo.push_back(uni_div_exact(mod, z.factor));
      todo.push_back(z.factor);
    }
  }
  return done;
}

}  // namespace pencillab
