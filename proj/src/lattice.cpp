#include "amns/lattice.hpp"

#include <algorithm>
#include <bit>
#include <utility>

#include "amns/error.hpp"

namespace amns::lattice {

namespace {

using Row = poly::IntPoly;

Wideint dot(const Row& a, const Row& b) {
  Wideint acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

void axpy(Row& dst, const Wideint& q, const Row& src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= q * src[i];
}

// Nearest integer to num/den for den > 0; halves round up.
Wideint round_div(const Wideint& num, const Wideint& den) {
  Wideint q;
  Wideint twice = 2 * num + den;
  Wideint den2 = 2 * den;
  mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), den2.get_mpz_t());
  return q;
}

Wideint exact_div(const Wideint& a, const Wideint& b) {
  Wideint r;
  mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

bool less_candidate(const MCandidate& a, const MCandidate& b) {
  if (a.norm_inf != b.norm_inf) return a.norm_inf < b.norm_inf;
  return a.origin < b.origin;
}

LatticeBasis build_basis(const Wideint& p, const Wideint& gamma, std::uint32_t n, bool make_even) {
  if (gamma <= 0 || gamma >= p) throw Error(Errc::precondition, "gamma must lie in (0, p)");
  if (n < 2) throw Error(Errc::precondition, "n must be at least 2");
  LatticeBasis b;
  b.parity_mode = make_even ? ParityMode::odd_lambda : ParityMode::even_lambda;
  b.rows.assign(n, Row(n, Wideint(0)));
  b.rows[0][0] = p;
  // t_i = -gamma^i mod p, so t_i + X^i vanishes at gamma.
  Wideint g = 1;
  for (std::uint32_t i = 1; i < n; ++i) {
    g = mod_floor(g * gamma, p);
    Wideint first = mod_floor(-g, p);
    if (make_even && mpz_odd_p(first.get_mpz_t())) first += p;
    b.rows[i][0] = first;
    b.rows[i][i] = 1;
  }
  return b;
}

}  // namespace

LatticeBasis build_basis_even(const Wideint& p, const Wideint& gamma, std::uint32_t n) {
  return build_basis(p, gamma, n, false);
}

LatticeBasis build_basis_odd(const Wideint& p, const Wideint& gamma, std::uint32_t n) {
  return build_basis(p, gamma, n, true);
}

// Integral LLL (Cohen, "A Course in Computational Algebraic Number Theory",
// Alg. 2.6.7): keeps d_i = det of the leading Gram minors and lam_ij = d_j mu_ij
// as integers, so no rationals appear.
LatticeBasis lll_reduce(LatticeBasis basis) {
  auto& b = basis.rows;
  const std::size_t n = b.size();
  if (n <= 1) return basis;

  std::vector<Wideint> d(n + 1, Wideint(0));  // d[0] = 1, d[i] for 1-based i
  std::vector<std::vector<Wideint>> lam(n, std::vector<Wideint>(n, Wideint(0)));
  d[0] = 1;
  d[1] = dot(b[0], b[0]);
  if (d[1] == 0) throw Error(Errc::precondition, "zero basis vector");

  // 0-based indices below; d is shifted by one (d[i+1] belongs to row i).
  auto red = [&](std::size_t k, std::size_t l) {
    if (2 * abs(lam[k][l]) > d[l + 1]) {
      const Wideint q = round_div(lam[k][l], d[l + 1]);
      axpy(b[k], q, b[l]);
      lam[k][l] -= q * d[l + 1];
      for (std::size_t i = 0; i < l; ++i) lam[k][i] -= q * lam[l][i];
    }
  };

  std::size_t k = 1, k_max = 0;
  while (k < n) {
    if (k > k_max) {
      k_max = k;
      for (std::size_t j = 0; j <= k; ++j) {
        Wideint u = dot(b[k], b[j]);
        for (std::size_t i = 0; i < j; ++i) u = exact_div(d[i + 1] * u - lam[k][i] * lam[j][i], d[i]);
        if (j < k) {
          lam[k][j] = u;
        } else {
          if (u == 0) throw Error(Errc::precondition, "basis vectors are linearly dependent");
          d[k + 1] = u;
        }
      }
    }
    red(k, k - 1);
    // Lovasz with delta = 3/4: 4 d_k d_{k-2} < 3 d_{k-1}^2 - 4 lam^2 triggers a swap.
    const Wideint lhs = 4 * d[k + 1] * d[k - 1];
    const Wideint rhs = 3 * d[k] * d[k] - 4 * lam[k][k - 1] * lam[k][k - 1];
    if (lhs < rhs) {
      std::swap(b[k], b[k - 1]);
      for (std::size_t j = 0; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
      const Wideint l = lam[k][k - 1];
      const Wideint big_b = exact_div(d[k - 1] * d[k + 1] + l * l, d[k]);
      for (std::size_t i = k + 1; i <= k_max; ++i) {
        const Wideint t = lam[i][k];
        lam[i][k] = exact_div(d[k + 1] * lam[i][k - 1] - l * t, d[k]);
        lam[i][k - 1] = exact_div(big_b * t + l * lam[i][k], d[k + 1]);
      }
      d[k] = big_b;
      if (k > 1) --k;
    } else {
      for (std::size_t l = k - 1; l-- > 0;) red(k, l);
      ++k;
    }
  }
  return basis;
}

bool is_lll_reduced(const LatticeBasis& basis) {
  const auto& b = basis.rows;
  const std::size_t n = b.size();
  // Rational Gram-Schmidt, independent of the integral bookkeeping above.
  std::vector<std::vector<mpq_class>> star(n);
  std::vector<mpq_class> norms(n);
  std::vector<std::vector<mpq_class>> mu(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    star[i].assign(b[i].begin(), b[i].end());
    for (std::size_t j = 0; j < i; ++j) {
      mpq_class num = 0;
      for (std::size_t c = 0; c < b[i].size(); ++c) num += mpq_class(b[i][c]) * star[j][c];
      mu[i][j] = num / norms[j];
      for (std::size_t c = 0; c < b[i].size(); ++c) star[i][c] -= mu[i][j] * star[j][c];
    }
    norms[i] = 0;
    for (const auto& c : star[i]) norms[i] += c * c;
  }
  const mpq_class half(1, 2), delta(3, 4);
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (abs(mu[i][j]) > half) return false;
    if (norms[i] < (delta - mu[i][i - 1] * mu[i][i - 1]) * norms[i - 1]) return false;
  }
  return true;
}

Wideint basis_determinant(const LatticeBasis& basis) { return poly::bareiss_det(basis.rows); }

std::vector<MCandidate> candidates_even(const LatticeBasis& reduced) {
  std::vector<MCandidate> out;
  for (std::size_t i = 0; i < reduced.rows.size(); ++i) {
    const auto& row = reduced.rows[i];
    if (mpz_odd_p(row[0].get_mpz_t())) out.push_back({row, poly::norm_inf(row), i});
  }
  std::sort(out.begin(), out.end(), less_candidate);
  return out;
}

std::vector<MCandidate> candidates_odd(const LatticeBasis& reduced) {
  const std::size_t n = reduced.rows.size();
  if (n > kMaxOddSearchDegree) throw Error(Errc::search_bound, "odd-lambda search limited to n <= 24");
  const poly::F2Poly xn_plus_1((std::uint64_t{1} << n) | 1);
  std::vector<MCandidate> out;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t beta = 1; beta < limit; ++beta) {
    // Parity image first: cheap rejection before forming the integer vector.
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < n; ++i)
      if ((beta >> i) & 1) bits ^= poly::F2Poly::from_int(reduced.rows[i]).bits();
    if (std::popcount(bits) % 2 == 0) continue;  // X - 1 divides the image
    if (poly::f2_gcd(poly::F2Poly(bits), xn_plus_1).bits() != 1) continue;
    poly::IntPoly m(n, Wideint(0));
    for (std::size_t i = 0; i < n; ++i)
      if ((beta >> i) & 1)
        for (std::size_t c = 0; c < n; ++c) m[c] += reduced.rows[i][c];
    Wideint norm = poly::norm_inf(m);
    out.push_back({std::move(m), std::move(norm), beta});
  }
  std::sort(out.begin(), out.end(), less_candidate);
  return out;
}

MCandidate select_m_even(const LatticeBasis& reduced) {
  auto c = candidates_even(reduced);
  if (c.empty()) throw Error(Errc::invariant_failure, "no basis row has an odd constant term");
  return c.front();
}

MCandidate select_m_odd(const LatticeBasis& reduced) {
  auto c = candidates_odd(reduced);
  if (c.empty()) throw Error(Errc::invariant_failure, "no binary combination is invertible mod (E, 2)");
  return c.front();
}

}  // namespace amns::lattice
