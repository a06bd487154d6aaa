#ifndef VK_AXIOMS_HPP
#define VK_AXIOMS_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "vk/valuation.hpp"

namespace vk {

enum class Axiom : int { A1 = 1, A2, A3, A4, A5, A6, A7, A8, A9, A10, A11, A12, A13 };

inline constexpr std::array<Axiom, 13> kAllAxioms{Axiom::A1, Axiom::A2,  Axiom::A3,  Axiom::A4, Axiom::A5,
                                                  Axiom::A6, Axiom::A7,  Axiom::A8,  Axiom::A9, Axiom::A10,
                                                  Axiom::A11, Axiom::A12, Axiom::A13};

std::string to_string(Axiom a);

enum class AxiomStatus { passed, failed, not_claimed };

struct AxiomOutcome {
  Axiom axiom;
  AxiomStatus status = AxiomStatus::not_claimed;
  std::size_t checks = 0;
  std::string counterexample;
};

struct AxiomReport {
  std::array<AxiomOutcome, 13> outcomes;

  const AxiomOutcome& operator[](Axiom a) const { return outcomes[static_cast<int>(a) - 1]; }
  AxiomOutcome& operator[](Axiom a) { return outcomes[static_cast<int>(a) - 1]; }
  bool all_claimed_pass() const {
    for (const auto& o : outcomes) {
      if (o.status == AxiomStatus::failed) return false;
    }
    return true;
  }
};

/// Bitset over A1..A13.
class AxiomClaims {
public:
  AxiomClaims() = default;
  AxiomClaims(std::initializer_list<Axiom> axioms) {
    for (auto a : axioms) set(a);
  }
  static AxiomClaims from(const Capabilities& c) {
    AxiomClaims claims{Axiom::A1, Axiom::A2, Axiom::A3, Axiom::A4, Axiom::A5, Axiom::A6};
    if (c.has_neutral) claims.set(Axiom::A7);
    if (c.has_null) claims.set(Axiom::A8);
    if (c.idempotent) claims.set(Axiom::A9);
    if (c.ordered) {
      for (auto a : {Axiom::A10, Axiom::A11, Axiom::A12, Axiom::A13}) claims.set(a);
    }
    return claims;
  }

  void set(Axiom a) { bits_ |= 1u << static_cast<int>(a); }
  bool has(Axiom a) const { return bits_ & (1u << static_cast<int>(a)); }

private:
  std::uint32_t bits_ = 0;
};

struct AxiomOptions {
  /// Combinations per axiom enumerated exhaustively up to this count, and
  /// sampled with `seed` above it.
  std::size_t exhaustive_limit = 1'000'000;
  std::uint64_t seed = 0x5eed;
};

namespace detail {

/// Calls f(i0, ..., i{k-1}) for every k-tuple of sample indices, or for a
/// seeded random selection of `limit` of them when there are more.
template <std::size_t K, class F>
void for_each_index_tuple(std::size_t n, const AxiomOptions& opt, F&& f) {
  std::array<std::size_t, K> idx{};
  if (n == 0) return;
  double total = 1;
  for (std::size_t i = 0; i < K; ++i) total *= static_cast<double>(n);
  if (total <= static_cast<double>(opt.exhaustive_limit)) {
    while (true) {
      f(idx);
      std::size_t pos = K;
      while (pos-- > 0) {
        if (++idx[pos] < n) break;
        idx[pos] = 0;
        if (pos == 0) return;
      }
    }
  }
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t s = 0; s < opt.exhaustive_limit; ++s) {
    for (auto& i : idx) i = pick(rng);
    f(idx);
  }
}

}  // namespace detail

/// Checks the axioms in `claims` against the sample valuations. Every failing
/// axiom records the first counterexample found.
template <Valuation V>
AxiomReport axiom_suite(std::span<const V> samples, AxiomClaims claims, const AxiomOptions& opt = {}) {
  using traits = valuation_traits<V>;
  AxiomReport report;
  for (auto a : kAllAxioms) {
    report[a].axiom = a;
    report[a].status = claims.has(a) ? AxiomStatus::passed : AxiomStatus::not_claimed;
  }
  auto check = [&](Axiom a, bool ok, const std::function<std::string()>& describe) {
    auto& o = report[a];
    ++o.checks;
    if (!ok && o.status == AxiomStatus::passed) {
      o.status = AxiomStatus::failed;
      o.counterexample = describe();
    }
  };
  const std::size_t n = samples.size();

  if (claims.has(Axiom::A1)) {
    detail::for_each_index_tuple<2>(n, opt, [&](auto i) {
      const V& x = samples[i[0]];
      const V& y = samples[i[1]];
      check(Axiom::A1, combine(x, y) == combine(y, x),
            [&] { return "commutativity fails for " + to_string(x) + " and " + to_string(y); });
    });
    detail::for_each_index_tuple<3>(n, opt, [&](auto i) {
      const V& x = samples[i[0]];
      const V& y = samples[i[1]];
      const V& z = samples[i[2]];
      check(Axiom::A1, combine(combine(x, y), z) == combine(x, combine(y, z)), [&] {
        return "associativity fails for " + to_string(x) + ", " + to_string(y) + ", " + to_string(z);
      });
    });
  }

  for (const V& phi : samples) {
    const Domain& d = label(phi);
    const auto parts = subsets(d);
    if (claims.has(Axiom::A2)) {
      for (const auto& s : parts) {
        check(Axiom::A2, label(project(phi, s)) == s,
              [&] { return "d(phi|S) != S for S = " + to_string(s) + ", phi = " + to_string(phi); });
      }
    }
    if (claims.has(Axiom::A3)) {
      for (const auto& t : parts) {
        const V down_t = project(phi, t);
        for (const auto& s : subsets(t)) {
          check(Axiom::A3, project(down_t, s) == project(phi, s), [&] {
            return "transitivity fails for S = " + to_string(s) + ", T = " + to_string(t) + ", phi = " + to_string(phi);
          });
        }
      }
    }
    if (claims.has(Axiom::A4)) {
      check(Axiom::A4, project(phi, d) == phi, [&] { return "phi|d(phi) != phi for " + to_string(phi); });
    }
    if (claims.has(Axiom::A7)) {
      const V e = traits::neutral(phi.universe(), d);
      check(Axiom::A7, combine(phi, e) == phi && combine(e, phi) == phi,
            [&] { return "phi (x) e_S != phi for " + to_string(phi); });
    }
    if (claims.has(Axiom::A8)) {
      const V z = traits::null(phi.universe(), d);
      check(Axiom::A8, combine(phi, z) == z && combine(z, phi) == z,
            [&] { return "phi (x) z_S != z_S for " + to_string(phi); });
      const bool phi_null = phi == z;
      for (const auto& s : parts) {
        const bool proj_null = project(phi, s) == traits::null(phi.universe(), s);
        check(Axiom::A8, proj_null == phi_null, [&] {
          return "phi|S = z_S does not match phi = z_T for S = " + to_string(s) + ", phi = " + to_string(phi);
        });
      }
    }
    if (claims.has(Axiom::A9)) {
      for (const auto& s : parts) {
        check(Axiom::A9, combine(phi, project(phi, s)) == phi, [&] {
          return "phi (x) phi|S != phi for S = " + to_string(s) + ", phi = " + to_string(phi);
        });
      }
    }
  }

  if (claims.has(Axiom::A5) || claims.has(Axiom::A6) || claims.has(Axiom::A7)) {
    detail::for_each_index_tuple<2>(n, opt, [&](auto i) {
      const V& phi = samples[i[0]];
      const V& psi = samples[i[1]];
      const Domain& s = label(phi);
      const Domain& t = label(psi);
      const Domain st = unite(s, t);
      if (claims.has(Axiom::A5)) {
        check(Axiom::A5, label(combine(phi, psi)) == st,
              [&] { return "d(phi (x) psi) != d(phi) u d(psi) for " + to_string(phi) + ", " + to_string(psi); });
      }
      if (claims.has(Axiom::A6)) {
        const V joint = combine(phi, psi);
        for (const auto& extra : subsets(subtract(st, s))) {
          const Domain u = unite(s, extra);
          check(Axiom::A6, project(joint, u) == combine(phi, project(psi, intersect(u, t))), [&] {
            return "combination fails for U = " + to_string(u) + ", phi = " + to_string(phi) +
                   ", psi = " + to_string(psi);
          });
        }
      }
      if (claims.has(Axiom::A7)) {
        const V es = traits::neutral(phi.universe(), s);
        const V et = traits::neutral(phi.universe(), t);
        check(Axiom::A7, combine(es, et) == traits::neutral(phi.universe(), st),
              [&] { return "e_S (x) e_T != e_{S u T} for S = " + to_string(s) + ", T = " + to_string(t); });
      }
    });
  }

  if constexpr (OrderedValuation<V>) {
    auto leq = [](const V& a, const V& b) { return is_lteq(traits::compare(a, b)); };
    if (claims.has(Axiom::A10)) {
      detail::for_each_index_tuple<2>(n, opt, [&](auto i) {
        const V& a = samples[i[0]];
        const V& b = samples[i[1]];
        check(Axiom::A10, leq(a, a), [&] { return "order not reflexive at " + to_string(a); });
        if (leq(a, b)) {
          check(Axiom::A10, label(a) == label(b),
                [&] { return "comparable valuations with different domains: " + to_string(a) + ", " + to_string(b); });
        }
        if (leq(a, b) && leq(b, a)) {
          check(Axiom::A10, a == b, [&] { return "order not antisymmetric at " + to_string(a) + ", " + to_string(b); });
        }
      });
      detail::for_each_index_tuple<3>(n, opt, [&](auto i) {
        const V& a = samples[i[0]];
        const V& b = samples[i[1]];
        const V& c = samples[i[2]];
        if (leq(a, b) && leq(b, c)) {
          check(Axiom::A10, leq(a, c), [&] {
            return "order not transitive at " + to_string(a) + ", " + to_string(b) + ", " + to_string(c);
          });
        }
        if (label(a) == label(b) && label(b) == label(c)) {
          const V m = traits::meet(a, b);
          check(Axiom::A10, leq(m, a) && leq(m, b) && (!(leq(c, a) && leq(c, b)) || leq(c, m)), [&] {
            return "meet of " + to_string(a) + " and " + to_string(b) + " is not the infimum (witness " +
                   to_string(c) + ")";
          });
        }
      });
    }
    if (claims.has(Axiom::A11)) {
      for (const V& phi : samples) {
        check(Axiom::A11, leq(traits::null(phi.universe(), label(phi)), phi),
              [&] { return "z_S is not below " + to_string(phi); });
      }
    }
    if (claims.has(Axiom::A12) || claims.has(Axiom::A13)) {
      std::vector<std::pair<std::size_t, std::size_t>> comparable;
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          if (leq(samples[a], samples[b])) comparable.emplace_back(a, b);
        }
      }
      if (claims.has(Axiom::A12)) {
        detail::for_each_index_tuple<2>(comparable.size(), opt, [&](auto i) {
          const V& p1 = samples[comparable[i[0]].first];
          const V& p2 = samples[comparable[i[0]].second];
          const V& q1 = samples[comparable[i[1]].first];
          const V& q2 = samples[comparable[i[1]].second];
          check(Axiom::A12, leq(combine(p1, q1), combine(p2, q2)), [&] {
            return "combination not monotone for " + to_string(p1) + " <= " + to_string(p2) + " and " +
                   to_string(q1) + " <= " + to_string(q2);
          });
        });
      }
      if (claims.has(Axiom::A13)) {
        for (const auto& [a, b] : comparable) {
          for (const auto& s : subsets(label(samples[a]))) {
            check(Axiom::A13, leq(project(samples[a], s), project(samples[b], s)), [&] {
              return "projection to " + to_string(s) + " not monotone for " + to_string(samples[a]) + " <= " +
                     to_string(samples[b]);
            });
          }
        }
      }
    }
  } else {
    for (auto a : {Axiom::A10, Axiom::A11, Axiom::A12, Axiom::A13}) {
      if (claims.has(a)) {
        report[a].status = AxiomStatus::failed;
        report[a].counterexample = "instance defines no order";
      }
    }
  }
  return report;
}

template <Valuation V>
AxiomReport axiom_suite(std::span<const V> samples, const AxiomOptions& opt = {}) {
  return axiom_suite<V>(samples, AxiomClaims::from(valuation_traits<V>::capabilities), opt);
}

/// Checks the commutative semiring laws and the additive-idempotency flag
/// on every triple of carrier samples. Returns an empty string on success.
template <Semiring S>
std::string semiring_law_violation(std::span<const typename S::value_type> samples) {
  using T = typename S::value_type;
  bool idempotent_seen = true;
  for (const T& a : samples) {
    if (!(S::add(a, a) == a)) idempotent_seen = false;
    if (!(S::add(a, S::zero()) == a)) return "0 is not an additive identity";
    if (!(S::mul(a, S::one()) == a)) return "1 is not a multiplicative identity";
    if (!(S::mul(a, S::zero()) == S::zero())) return "0 does not annihilate";
    for (const T& b : samples) {
      if (!(S::add(a, b) == S::add(b, a))) return "addition not commutative";
      if (!(S::mul(a, b) == S::mul(b, a))) return "multiplication not commutative";
      for (const T& c : samples) {
        if (!(S::add(S::add(a, b), c) == S::add(a, S::add(b, c)))) return "addition not associative";
        if (!(S::mul(S::mul(a, b), c) == S::mul(a, S::mul(b, c)))) return "multiplication not associative";
        if (!(S::mul(a, S::add(b, c)) == S::add(S::mul(a, b), S::mul(a, c)))) return "not distributive";
      }
    }
  }
  if (idempotent_seen != S::additively_idempotent) return "additive idempotency flag disagrees with samples";
  return {};
}

}  // namespace vk

#endif  // VK_AXIOMS_HPP
