#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace semiarc {

/// Field elements are dense indices 0..q-1. The index of an element is its
/// polynomial representation read as a base-p number, constant term first:
/// index = c0 + c1 p + ... + c_{r-1} p^{r-1}. Hence 0 is zero and 1 is one.
using Elem = std::uint32_t;

/**
 * Exact table arithmetic in GF(p^r).
 *
 * Multiplication goes through log/antilog tables for a fixed primitive
 * element; addition through a Cayley table when q is small and through
 * base-p digits otherwise. Immutable after construction.
 */
class FiniteField {
 public:
  unsigned characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return r_; }
  unsigned order() const noexcept { return q_; }
  /// Monic modulus, coefficients c0..cr (cr == 1).
  const std::vector<unsigned>& modulus() const noexcept { return modulus_; }

  Elem add(Elem a, Elem b) const;
  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg_[b]); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    unsigned s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  /// The fixed primitive element g (least index of multiplicative order q-1).
  Elem generator() const noexcept { return exp_[q_ > 2 ? 1 : 0]; }
  /// Discrete log base g of a nonzero element.
  unsigned log(Elem a) const;
  /// g^k for any k.
  Elem exp(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }

  /// x -> x^{p^e}.
  Elem frobenius(Elem a, unsigned e = 1) const;

  std::vector<unsigned> digits(Elem a) const;
  Elem from_digits(std::span<const unsigned> coeffs) const;

  bool contains(Elem a) const noexcept { return a < q_; }
  /// True when a lies in the subfield GF(p^d), i.e. a^{p^d} == a.
  bool in_subfield(Elem a, unsigned d) const;
  /// Sorted elements of the subfield GF(p^d); d must divide r.
  std::vector<Elem> subfield(unsigned d) const;
  /// Sorted nonzero squares.
  std::vector<Elem> nonzero_squares() const;
  /// Multiplicative order of a nonzero element.
  std::uint64_t element_order(Elem a) const;

  friend bool operator==(const FiniteField& a, const FiniteField& b) {
    return a.p_ == b.p_ && a.r_ == b.r_ && a.modulus_ == b.modulus_;
  }

 private:
  friend FiniteField make_field(unsigned, unsigned, std::optional<std::vector<unsigned>>);
  FiniteField() = default;

  unsigned p_ = 0;
  unsigned r_ = 0;
  unsigned q_ = 0;
  std::vector<unsigned> modulus_;
  std::vector<Elem> exp_;       // size q-1
  std::vector<unsigned> log_;   // size q, log_[0] unused
  std::vector<Elem> neg_;
  std::vector<Elem> frob_;      // x -> x^p
  std::vector<Elem> add_table_; // q*q when q <= kAddTableLimit
};

inline constexpr unsigned kAddTableLimit = 256;

bool is_prime(std::uint64_t n);

/// Builds GF(p^r). Without a modulus the lexicographically least monic
/// irreducible (comparing c0 first) is used.
FiniteField make_field(unsigned p, unsigned r,
                       std::optional<std::vector<unsigned>> modulus = std::nullopt);

/// Smallest q' = p'^r' description of a prime power, or nullopt.
std::optional<std::pair<unsigned, unsigned>> prime_power(std::uint64_t q);

/// Field of order q with the canonical modulus.
FiniteField make_field_of_order(std::uint64_t q);

/// Whether `poly` (c0..cn) is irreducible over GF(p); used for modulus checks.
bool is_irreducible(unsigned p, std::span<const unsigned> poly);

/// Multiplicative subgroup of order n: {g^{k(q-1)/n}}.
struct MultSubgroup {
  unsigned n = 0;
  Elem generator = 1;
  std::vector<Elem> elements;  // sorted

  bool contains(Elem a) const;
};

MultSubgroup mult_subgroup(const FiniteField& field, unsigned n);

/**
 * Additive subgroup that is a GF(p^d)-subspace of GF(q), spanned by `basis`
 * over the subfield GF(p^d). Its order is p^h with h = d * basis.size().
 */
struct AddSubgroup {
  unsigned d = 1;
  unsigned h1 = 0;
  unsigned h = 0;
  std::vector<Elem> basis;
  std::vector<Elem> elements;  // sorted

  std::size_t size() const noexcept { return elements.size(); }
  bool contains(Elem a) const;
  /// B = AB.
  bool invariant_under(const FiniteField& field, const MultSubgroup& a) const;
  /// Largest e | r such that B is a GF(p^e)-subspace.
  unsigned scalar_field_degree(const FiniteField& field) const;
  /// True when B coincides with the subfield GF(p^h).
  bool is_subfield(const FiniteField& field) const;
};

AddSubgroup add_subgroup(const FiniteField& field, unsigned d, std::span<const Elem> basis);

/// Rebuilds an AddSubgroup description from an additively closed element set,
/// choosing d as its scalar field degree and a greedy basis.
AddSubgroup add_subgroup_from_elements(const FiniteField& field, std::vector<Elem> elements);

}  // namespace semiarc
