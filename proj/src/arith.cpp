#include "sigmapart/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <string>

namespace sigmapart {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t ipow(std::uint64_t base, int e) {
  std::uint64_t out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

// e(num/den) with exact values on the quarter turns.
Complex root_of_unity(std::int64_t num, std::int64_t den) {
  num %= den;
  if (num < 0) num += den;
  if ((4 * num) % den == 0) {
    switch ((4 * num) / den) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

std::uint64_t multiplicative_order(std::uint64_t g, std::uint64_t mod) {
  std::uint64_t x = g % mod;
  std::uint64_t order = 1;
  while (x != 1 % mod) {
    x = mul_mod(x, g, mod);
    ++order;
  }
  return order;
}

struct CyclicFactor {
  std::uint64_t generator;  // lifted to the full modulus
  std::uint64_t order;
};

// Cyclic decomposition of (Z/m)^* via CRT over prime powers.
std::vector<CyclicFactor> unit_group_basis(std::uint32_t m) {
  std::vector<CyclicFactor> basis;
  if (m <= 2) return basis;
  for (const auto& [p, a] : factorize(m)) {
    const std::uint64_t q = ipow(p, a);
    const std::uint64_t rest = m / q;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> local;  // (generator mod q, order)
    if (p == 2) {
      if (a == 2) local.push_back({3, 2});
      if (a >= 3) {
        local.push_back({q - 1, 2});
        local.push_back({5, q / 4});
      }
    } else {
      const std::uint64_t phi_q = q / p * (p - 1);
      for (std::uint64_t g = 2; g < q; ++g) {
        if (g % p == 0) continue;
        if (multiplicative_order(g, q) == phi_q) {
          local.push_back({g, phi_q});
          break;
        }
      }
    }
    for (const auto& [g, order] : local) {
      // x = g mod q, x = 1 mod rest
      std::uint64_t x = g;
      while (x % rest != 1 % rest) x += q;
      basis.push_back({x, order});
    }
  }
  return basis;
}

std::uint32_t conductor_of(const DirichletCharacter& chi) {
  const std::uint32_t m = chi.modulus;
  for (std::uint32_t d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    bool trivial = true;
    for (std::uint32_t a = 1; a < m + (m == 1) && trivial; ++a) {
      if (std::gcd(a, m) != 1 || a % d != 1 % d) continue;
      if (std::abs(chi.values[a % m] - Complex(1.0, 0.0)) > 1e-9) trivial = false;
    }
    if (trivial) return d;
  }
  return m;
}

}  // namespace

std::vector<PrimePower> factorize(std::uint64_t n) {
  require(n >= 1, "factorize: n must be >= 1");
  if (n > kMaxFactorInput)
    throw BudgetError("factorize: n = " + std::to_string(n) + " exceeds the configured limit " +
                      std::to_string(kMaxFactorInput));
  std::vector<PrimePower> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

MultiplicativeBasics multiplicative_basics(std::uint64_t n) {
  MultiplicativeBasics out{1, 1, 0};
  for (const auto& [p, e] : factorize(n)) {
    out.omega += 1;
    out.mu = (e > 1) ? 0 : -out.mu;
    out.phi *= ipow(p, e - 1) * (p - 1);
  }
  return out;
}

mpz_class sigma_r(std::uint64_t n, int r) {
  require(n >= 1 && r >= 1, "sigma_r: need n >= 1 and r >= 1");
  mpz_class out = 1;
  for (const auto& [p, e] : factorize(n)) {
    mpz_class pr;
    mpz_ui_pow_ui(pr.get_mpz_t(), p, static_cast<unsigned long>(r));
    mpz_class term = 1, acc = 1;
    for (int i = 0; i < e; ++i) {
      term *= pr;
      acc += term;
    }
    out *= acc;
  }
  return out;
}

GapSequence make_gap_sequence(int r, std::size_t limit) {
  require(r >= 1, "make_gap_sequence: r must be >= 1");
  GapSequence seq;
  seq.r = r;
  seq.limit = limit;
  const std::size_t top = limit + 1;
  seq.sigma.assign(top + 1, mpz_class(0));
  for (std::size_t d = 1; d <= top; ++d) {
    mpz_class dr;
    mpz_ui_pow_ui(dr.get_mpz_t(), d, static_cast<unsigned long>(r));
    for (std::size_t k = d; k <= top; k += d) seq.sigma[k] += dr;
  }
  seq.gaps.assign(limit + 1, mpz_class(0));
  for (std::size_t k = 1; k <= limit; ++k) seq.gaps[k] = seq.sigma[k + 1] - seq.sigma[k];
  return seq;
}

namespace {

std::shared_ptr<const GapTable> build_gap_table(int r, std::size_t limit) {
  const std::size_t top = limit + 1;
  // sigma_r(n) < zeta(r) n^r <= 2 n^r must fit in a signed 128-bit integer.
  if (static_cast<double>(r) * std::log2(static_cast<double>(top)) + 1.0 > 125.0)
    throw BudgetError("gap table: sigma_" + std::to_string(r) + " overflows 128 bits at n = " +
                      std::to_string(top));
  std::vector<__int128> sig(top + 1, 0);
  for (std::size_t d = 1; d <= top; ++d) {
    __int128 dr = 1;
    for (int i = 0; i < r; ++i) dr *= static_cast<__int128>(d);
    for (std::size_t k = d; k <= top; k += d) sig[k] += dr;
  }
  auto table = std::make_shared<GapTable>();
  table->r = r;
  table->limit = limit;
  table->sigma.resize(top + 1);
  table->gaps.assign(limit + 1, 0.0);
  for (std::size_t k = 0; k <= top; ++k) table->sigma[k] = static_cast<double>(sig[k]);
  for (std::size_t k = 1; k <= limit; ++k)
    table->gaps[k] = static_cast<double>(sig[k + 1] - sig[k]);
  return table;
}

}  // namespace

std::shared_ptr<const GapTable> gap_table(int r, std::size_t min_limit) {
  require(r >= 1, "gap_table: r must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const GapTable>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[r];
  if (!slot || slot->limit < min_limit) {
    std::size_t limit = std::max<std::size_t>(min_limit, 4096);
    if (slot) limit = std::max(limit, 2 * slot->limit);
    slot = build_gap_table(r, limit);
  }
  return slot;
}

std::int64_t ramanujan_sum(std::uint64_t m, std::uint64_t n) {
  require(m >= 1 && n >= 1, "ramanujan_sum: need m >= 1 and n >= 1");
  const std::uint64_t g = std::gcd(m, n);
  const auto quotient = multiplicative_basics(m / g);
  if (quotient.mu == 0) return 0;
  const auto phi_m = static_cast<std::int64_t>(totient(m));
  return quotient.mu * (phi_m / static_cast<std::int64_t>(quotient.phi));
}

DirichletCharacter DirichletCharacter::conjugate() const {
  DirichletCharacter out = *this;
  for (auto& v : out.values) v = std::conj(v);
  return out;
}

std::vector<DirichletCharacter> characters_mod(std::uint32_t m, std::uint32_t limit) {
  if (m < 1 || m > limit)
    throw ConfigError("characters_mod: modulus " + std::to_string(m) +
                      " outside the enumeration limit 1.." + std::to_string(limit));
  const auto basis = unit_group_basis(m);

  // Discrete log of every unit with respect to the basis.
  std::vector<std::vector<std::uint64_t>> dlog(m);
  std::vector<std::uint64_t> exps(basis.size(), 0);
  std::size_t group_order = 1;
  for (const auto& f : basis) group_order *= f.order;
  for (std::size_t idx = 0; idx < group_order; ++idx) {
    std::uint64_t a = 1 % m;
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::uint64_t e = 0; e < exps[i]; ++e) a = mul_mod(a, basis[i].generator, m);
    dlog[a] = exps;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (++exps[i] < basis[i].order) break;
      exps[i] = 0;
    }
  }

  std::vector<DirichletCharacter> out;
  out.reserve(group_order);
  std::vector<std::uint64_t> labels(basis.size(), 0);
  for (std::size_t idx = 0; idx < group_order; ++idx) {
    DirichletCharacter chi;
    chi.modulus = m;
    chi.values.assign(m, Complex(0.0, 0.0));
    for (std::uint32_t a = 0; a < m; ++a) {
      if (std::gcd(a, m) != 1) continue;
      // lcm of orders keeps the angle an exact rational
      std::int64_t num = 0;
      std::int64_t den = 1;
      for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto order = static_cast<std::int64_t>(basis[i].order);
        const auto term = static_cast<std::int64_t>((labels[i] * dlog[a][i]) % basis[i].order);
        num = num * order + term * den;
        den *= order;
      }
      chi.values[a] = root_of_unity(num, den);
    }
    chi.is_principal = std::all_of(labels.begin(), labels.end(), [](auto l) { return l == 0; });
    chi.conductor = conductor_of(chi);
    chi.is_primitive = chi.conductor == m;
    out.push_back(std::move(chi));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (++labels[i] < basis[i].order) break;
      labels[i] = 0;
    }
  }
  return out;
}

std::shared_ptr<const std::vector<DirichletCharacter>> character_table(std::uint32_t m,
                                                                       std::uint32_t limit) {
  static std::mutex mutex;
  static std::map<std::uint32_t, std::shared_ptr<const std::vector<DirichletCharacter>>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(m); it != cache.end()) {
      if (m > limit) throw ConfigError("character_table: modulus beyond limit");
      return it->second;
    }
  }
  auto table = std::make_shared<const std::vector<DirichletCharacter>>(characters_mod(m, limit));
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(m, std::move(table)).first->second;
}

CharacterSums character_sums(const DirichletCharacter& chi, std::uint64_t n) {
  const std::uint32_t m = chi.modulus;
  CharacterSums out{};
  for (std::uint32_t b = 0; b < m; ++b) {
    const Complex term = chi.values[b] * root_of_unity(static_cast<std::int64_t>((b * n) % m), m);
    out.c_chi += term;
    if (std::gcd(b, m) == 1) out.c_chi_prime += term;
  }
  for (std::uint32_t b = 0; b < m; ++b)
    out.tau += chi.values[b] * root_of_unity(static_cast<std::int64_t>(b), m);
  return out;
}

double shifted_ramanujan_identity_residual(std::uint64_t m, std::uint64_t n, std::uint32_t limit) {
  require(m >= 1 && n >= 1, "shifted_ramanujan_identity_residual: need m, n >= 1");
  if (m > limit) throw ConfigError("shifted_ramanujan_identity_residual: modulus beyond limit");
  const auto basics = multiplicative_basics(m);
  const double phi = static_cast<double>(basics.phi);
  const double lhs = static_cast<double>(ramanujan_sum(m, n + 1));
  Complex rhs = static_cast<double>(basics.mu) / phi * static_cast<double>(ramanujan_sum(m, n));
  const auto chars = character_table(static_cast<std::uint32_t>(m), limit);
  Complex acc{};
  for (const auto& chi : *chars) {
    if (chi.is_principal) continue;
    const Complex tau = character_sums(chi, 1).tau;
    const Complex cbar = character_sums(chi.conjugate(), n).c_chi_prime;
    acc += tau * cbar;
  }
  rhs += acc / phi;
  return std::abs(Complex(lhs, 0.0) - rhs);
}

InducedCharacter induce_primitive(const DirichletCharacter& chi) {
  if (chi.is_principal) throw ConfigError("induce_primitive: principal character has no primitive non-principal inducer");
  const std::uint32_t m = chi.modulus;
  const std::uint32_t d = chi.conductor;

  InducedCharacter out;
  auto& star = out.primitive;
  star.modulus = d;
  star.values.assign(d, Complex(0.0, 0.0));
  for (std::uint32_t a = 0; a < d; ++a) {
    if (std::gcd(a, d) != 1) continue;
    std::uint64_t b = a;
    while (std::gcd<std::uint64_t>(b, m) != 1) b += d;
    star.values[a] = chi.values[b % m];
  }
  star.is_principal = false;
  star.conductor = conductor_of(star);
  star.is_primitive = star.conductor == d;
  if (!star.is_primitive) throw InvariantError("induce_primitive: induced character is not primitive");

  const double ratio = static_cast<double>(totient(m)) / static_cast<double>(totient(d));
  double worst = 0.0;
  for (std::uint64_t n = 1; n <= m; ++n) {
    const Complex lhs = character_sums(chi, n).c_chi;
    const Complex rhs = ratio * character_sums(star, n).c_chi_prime;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  out.scale_residual = worst;
  out.scale_check = worst < 1e-9;

  const std::uint32_t cofactor = m / d;
  const Complex expected = static_cast<double>(moebius(cofactor)) * star(cofactor) *
                           character_sums(star, 1).tau;
  out.gauss_relation_check = std::abs(character_sums(chi, 1).tau - expected) < 1e-9;
  if (!out.gauss_relation_check)
    throw InvariantError("induce_primitive: Gauss sum relation failed for modulus " +
                         std::to_string(m));
  return out;
}

}  // namespace sigmapart
