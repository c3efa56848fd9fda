#include "semiarc/field.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "semiarc/errors.hpp"

namespace semiarc {

namespace {

using Poly = std::vector<unsigned>;  // c0..cn, may carry trailing zeros

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

unsigned inv_mod(unsigned a, unsigned p) {
  // p is prime and small: Fermat.
  std::uint64_t result = 1, base = a % p;
  unsigned e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<unsigned>(result);
}

// Remainder of a modulo b over GF(p); b nonzero.
Poly poly_mod(Poly a, Poly b, unsigned p) {
  trim(a);
  trim(b);
  const unsigned lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const unsigned factor = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = (a[shift + i] + (p - factor) * b[i]) % p;
    }
    trim(a);
  }
  return a;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& modulus, unsigned p) {
  Poly prod(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
  }
  return poly_mod(std::move(prod), modulus, p);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<std::pair<unsigned, unsigned>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 2;
  while (q % p) ++p;
  unsigned r = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++r;
  }
  if (rest != 1) return std::nullopt;
  return std::make_pair(static_cast<unsigned>(p), r);
}

bool is_irreducible(unsigned p, std::span<const unsigned> poly_in) {
  Poly poly(poly_in.begin(), poly_in.end());
  trim(poly);
  if (poly.size() < 2) return false;
  const std::size_t n = poly.size() - 1;
  if (n == 1) return true;
  // Trial division by every monic polynomial of degree 1..n/2.
  for (std::size_t deg = 1; deg <= n / 2; ++deg) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < deg; ++i) count *= p;
    for (std::uint64_t k = 0; k < count; ++k) {
      Poly divisor(deg + 1, 0);
      std::uint64_t rest = k;
      for (std::size_t i = 0; i < deg; ++i) {
        divisor[i] = static_cast<unsigned>(rest % p);
        rest /= p;
      }
      divisor[deg] = 1;
      if (poly_mod(poly, divisor, p).empty()) return false;
    }
  }
  return true;
}

FiniteField make_field(unsigned p, unsigned r, std::optional<std::vector<unsigned>> modulus) {
  if (!is_prime(p)) {
    throw Error(ErrorKind::NonPrimeCharacteristic, std::to_string(p) + " is not prime");
  }
  if (r == 0) throw Error(ErrorKind::InvalidModulus, "extension degree must be positive");
  std::uint64_t q64 = 1;
  for (unsigned i = 0; i < r; ++i) {
    q64 *= p;
    if (q64 > (1u << 20)) throw Error(ErrorKind::InvalidModulus, "field order exceeds 2^20");
  }
  const auto q = static_cast<unsigned>(q64);

  Poly mod;
  if (modulus) {
    mod = *modulus;
    if (mod.size() != r + 1 || mod.back() != 1) {
      throw Error(ErrorKind::InvalidModulus, "modulus must be monic of degree " + std::to_string(r));
    }
    for (unsigned c : mod) {
      if (c >= p) throw Error(ErrorKind::InvalidModulus, "modulus coefficient out of range");
    }
    if (!is_irreducible(p, mod)) {
      throw Error(ErrorKind::ReducibleModulus, "modulus is reducible over GF(" + std::to_string(p) + ")");
    }
  } else {
    // Lexicographic order on (c0, ..., c_{r-1}) with c0 most significant.
    for (unsigned k = 0; k < q; ++k) {
      Poly cand(r + 1, 0);
      unsigned rest = k;
      for (unsigned i = 0; i < r; ++i) {
        cand[r - 1 - i] = rest % p;
        rest /= p;
      }
      cand[r] = 1;
      if (is_irreducible(p, cand)) {
        mod = std::move(cand);
        break;
      }
    }
  }

  FiniteField f;
  f.p_ = p;
  f.r_ = r;
  f.q_ = q;
  f.modulus_ = mod;

  auto to_poly = [&](Elem a) {
    Poly out(r, 0);
    for (unsigned i = 0; i < r; ++i) {
      out[i] = a % p;
      a /= p;
    }
    return out;
  };
  auto from_poly = [&](const Poly& a) {
    Elem out = 0;
    for (std::size_t i = a.size(); i-- > 0;) out = out * p + a[i];
    return out;
  };

  // Least primitive element: walk powers by naive polynomial multiplication.
  std::vector<Elem> powers;
  for (Elem cand = 1; cand < q; ++cand) {
    const Poly g = to_poly(cand);
    powers.assign(1, 1);
    Poly cur = to_poly(1);
    bool primitive = true;
    for (unsigned k = 1; k < q - 1; ++k) {
      cur = mulmod(cur, g, mod, p);
      const Elem e = from_poly(cur);
      if (e == 1) {
        primitive = false;
        break;
      }
      powers.push_back(e);
    }
    if (primitive) break;
  }
  f.exp_ = powers;
  f.log_.assign(q, 0);
  for (unsigned k = 0; k < f.exp_.size(); ++k) f.log_[f.exp_[k]] = k;

  f.neg_.resize(q);
  for (Elem a = 0; a < q; ++a) {
    Poly d = to_poly(a);
    for (auto& c : d) c = (p - c) % p;
    f.neg_[a] = from_poly(d);
  }
  if (q <= kAddTableLimit) {
    f.add_table_.resize(static_cast<std::size_t>(q) * q);
    for (Elem a = 0; a < q; ++a) {
      for (Elem b = 0; b < q; ++b) {
        Elem x = a, y = b, out = 0, scale = 1;
        for (unsigned i = 0; i < r; ++i) {
          out += ((x % p + y % p) % p) * scale;
          x /= p;
          y /= p;
          scale *= p;
        }
        f.add_table_[static_cast<std::size_t>(a) * q + b] = out;
      }
    }
  }
  f.frob_.resize(q);
  for (Elem a = 0; a < q; ++a) f.frob_[a] = f.pow(a, p);
  return f;
}

FiniteField make_field_of_order(std::uint64_t q) {
  auto pp = prime_power(q);
  if (!pp) throw Error(ErrorKind::NonPrimeCharacteristic, std::to_string(q) + " is not a prime power");
  return make_field(pp->first, pp->second);
}

Elem FiniteField::add(Elem a, Elem b) const {
  if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
  if (p_ == 2) return a ^ b;
  Elem out = 0, scale = 1;
  for (unsigned i = 0; i < r_; ++i) {
    out += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw Error(ErrorKind::NotAnElement, "zero has no inverse");
  const unsigned l = log_[a];
  return exp_[l == 0 ? 0 : q_ - 1 - l];
}

Elem FiniteField::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1)];
}

unsigned FiniteField::log(Elem a) const {
  if (a == 0 || a >= q_) throw Error(ErrorKind::NotAnElement, "log of zero");
  return log_[a];
}

Elem FiniteField::frobenius(Elem a, unsigned e) const {
  for (unsigned i = 0; i < e % r_; ++i) a = frob_[a];
  return a;
}

std::vector<unsigned> FiniteField::digits(Elem a) const {
  std::vector<unsigned> out(r_);
  for (unsigned i = 0; i < r_; ++i) {
    out[i] = a % p_;
    a /= p_;
  }
  return out;
}

Elem FiniteField::from_digits(std::span<const unsigned> coeffs) const {
  Elem out = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) out = out * p_ + coeffs[i] % p_;
  return out;
}

bool FiniteField::in_subfield(Elem a, unsigned d) const { return frobenius(a, d) == a; }

std::vector<Elem> FiniteField::subfield(unsigned d) const {
  if (d == 0 || r_ % d != 0) {
    throw Error(ErrorKind::DegreeDoesNotDivide, std::to_string(d) + " does not divide " + std::to_string(r_));
  }
  std::vector<Elem> out;
  for (Elem a = 0; a < q_; ++a) {
    if (in_subfield(a, d)) out.push_back(a);
  }
  return out;
}

std::vector<Elem> FiniteField::nonzero_squares() const {
  std::set<Elem> sq;
  for (Elem a = 1; a < q_; ++a) sq.insert(mul(a, a));
  return {sq.begin(), sq.end()};
}

std::uint64_t FiniteField::element_order(Elem a) const {
  const std::uint64_t l = log(a);
  return (q_ - 1) / std::gcd<std::uint64_t>(l, q_ - 1);
}

bool MultSubgroup::contains(Elem a) const {
  return std::binary_search(elements.begin(), elements.end(), a);
}

MultSubgroup mult_subgroup(const FiniteField& field, unsigned n) {
  const unsigned q = field.order();
  if (n == 0 || (q - 1) % n != 0) {
    throw Error(ErrorKind::OrderDoesNotDivide,
                std::to_string(n) + " does not divide " + std::to_string(q - 1));
  }
  MultSubgroup out;
  out.n = n;
  const unsigned step = (q - 1) / n;
  out.generator = field.exp(step);
  for (unsigned k = 0; k < n; ++k) out.elements.push_back(field.exp(static_cast<std::uint64_t>(k) * step));
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

bool AddSubgroup::contains(Elem a) const {
  return std::binary_search(elements.begin(), elements.end(), a);
}

bool AddSubgroup::invariant_under(const FiniteField& field, const MultSubgroup& a) const {
  for (Elem s : a.elements) {
    for (Elem b : elements) {
      if (!contains(field.mul(s, b))) return false;
    }
  }
  return true;
}

unsigned AddSubgroup::scalar_field_degree(const FiniteField& field) const {
  unsigned best = 1;
  for (unsigned e = 1; e <= field.degree(); ++e) {
    if (field.degree() % e) continue;
    // GF(p^e)* is cyclic, generated by g^{(q-1)/(p^e-1)}.
    unsigned pe = 1;
    for (unsigned i = 0; i < e; ++i) pe *= field.characteristic();
    const Elem gen = field.exp((field.order() - 1) / (pe - 1));
    bool closed = true;
    for (Elem b : elements) {
      if (!contains(field.mul(gen, b))) {
        closed = false;
        break;
      }
    }
    if (closed) best = e;
  }
  return best;
}

bool AddSubgroup::is_subfield(const FiniteField& field) const {
  if (h == 0 || field.degree() % h != 0) return false;
  return elements == field.subfield(h);
}

AddSubgroup add_subgroup(const FiniteField& field, unsigned d, std::span<const Elem> basis) {
  if (d == 0 || field.degree() % d != 0) {
    throw Error(ErrorKind::DegreeDoesNotDivide,
                std::to_string(d) + " does not divide " + std::to_string(field.degree()));
  }
  const std::vector<Elem> scalars = field.subfield(d);
  std::vector<Elem> span_elems{0};
  for (Elem b : basis) {
    if (!field.contains(b)) throw Error(ErrorKind::NotAnElement, "basis element out of range");
    std::set<Elem> next;
    for (Elem x : span_elems) {
      for (Elem lambda : scalars) next.insert(field.add(x, field.mul(lambda, b)));
    }
    if (next.size() != span_elems.size() * scalars.size()) {
      throw Error(ErrorKind::DependentBasis, "basis is linearly dependent over GF(p^" + std::to_string(d) + ")");
    }
    span_elems.assign(next.begin(), next.end());
  }
  AddSubgroup out;
  out.d = d;
  out.h1 = static_cast<unsigned>(basis.size());
  out.h = d * out.h1;
  out.basis.assign(basis.begin(), basis.end());
  out.elements = std::move(span_elems);
  return out;
}

AddSubgroup add_subgroup_from_elements(const FiniteField& field, std::vector<Elem> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  AddSubgroup probe;
  probe.elements = elements;
  if (elements.empty() || elements.front() != 0) {
    throw Error(ErrorKind::InconsistentInput, "additive subgroup must contain zero");
  }
  for (Elem a : elements) {
    for (Elem b : elements) {
      if (!probe.contains(field.add(a, b))) {
        throw Error(ErrorKind::InconsistentInput, "element set is not additively closed");
      }
    }
  }
  const unsigned d = probe.scalar_field_degree(field);
  // Greedy basis over GF(p^d) in index order.
  std::vector<Elem> basis;
  std::vector<Elem> current{0};
  const std::vector<Elem> scalars = field.subfield(d);
  for (Elem a : elements) {
    if (std::find(current.begin(), current.end(), a) != current.end()) continue;
    basis.push_back(a);
    std::set<Elem> next;
    for (Elem x : current) {
      for (Elem lambda : scalars) next.insert(field.add(x, field.mul(lambda, a)));
    }
    current.assign(next.begin(), next.end());
    if (current.size() == elements.size()) break;
  }
  return add_subgroup(field, d, basis);
}

}  // namespace semiarc
