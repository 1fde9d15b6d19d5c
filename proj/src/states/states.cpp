#include "states/states.hpp"

#include <algorithm>
#include <functional>

namespace symloc {

BlockSpec::BlockSpec(std::vector<int> ks) : excitations(std::move(ks)) {
  if (excitations.empty()) throw SymlocError("BlockSpec: need at least one block");
  for (int k : excitations)
    if (k < 0) throw SymlocError("BlockSpec: negative excitation count");
  if (!std::is_sorted(excitations.begin(), excitations.end(), std::greater<int>()))
    throw SymlocError("BlockSpec: blocks must be in non-increasing order");
}

int BlockSpec::local_dim() const {
  int d = 0;
  for (int k : excitations) d += k + 1;
  return d;
}

int BlockSpec::level_offset(int block) const {
  int off = 0;
  for (int b = 0; b < block; ++b) off += excitations[b] + 1;
  return off;
}

DerogSpec::DerogSpec(int k_, std::vector<int> occ, BlockSpec blocks_)
    : k(k_), occupations(std::move(occ)), blocks(std::move(blocks_)) {
  if (static_cast<int>(occupations.size()) != blocks.blocks())
    throw SymlocError("DerogSpec: occupation list length != block count");
  for (int b = 0; b < blocks.blocks(); ++b) {
    if (occupations[b] < 0) throw SymlocError("DerogSpec: negative occupation");
    if (blocks.excitations[b] < k && occupations[b] != 0)
      throw SymlocError("DerogSpec: support condition violated (occupied block too small)");
  }
}

int DerogSpec::n() const {
  int s = 0;
  for (int o : occupations) s += o;
  return s;
}

namespace {

// Enumerate compositions i_1 + ... + i_n = k with 0 <= i_s <= cap(s).
void for_each_composition(int n, int k, const std::function<int(int)>& cap,
                          const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> digits(n, 0);
  std::function<void(int, int)> rec = [&](int site, int rem) {
    if (site == n) {
      if (rem == 0) fn(digits);
      return;
    }
    int hi = std::min(rem, cap(site));
    for (int v = 0; v <= hi; ++v) {
      digits[site] = v;
      rec(site + 1, rem - v);
    }
    digits[site] = 0;
  };
  rec(0, k);
}

std::int64_t pack(const std::vector<int>& levels, int d) {
  std::int64_t idx = 0;
  for (int v : levels) idx = idx * d + v;
  return idx;
}

}  // namespace

PureState e_k(int k, int n) {
  if (k < 0 || n < 1) throw SymlocError("e_k: need k >= 0, n >= 1");
  int d = std::max(k + 1, 2);
  PureState out(n, d);
  for_each_composition(
      n, k, [&](int) { return k; },
      [&](const std::vector<int>& digits) { out.amps(pack(digits, d)) += Cplx(1, 0); });
  return out;
}

PureState direct_sum_ek(const BlockSpec& spec, int n) {
  int d = std::max(spec.local_dim(), 2);
  PureState out(n, d);
  for (int b = 0; b < spec.blocks(); ++b) {
    int kb = spec.excitations[b];
    int off = spec.level_offset(b);
    for_each_composition(
        n, kb, [&](int) { return kb; },
        [&](const std::vector<int>& digits) {
          std::vector<int> levels(n);
          for (int s = 0; s < n; ++s) levels[s] = off + digits[s];
          out.amps(pack(levels, d)) += Cplx(1, 0);
        });
  }
  return out;
}

PureState derog_ek(const DerogSpec& spec) {
  const int n = spec.n();
  if (n < 1) throw SymlocError("derog_ek: empty occupation");
  const int K = spec.blocks.blocks();
  const int d = std::max(spec.blocks.local_dim(), 2);
  PureState out(n, d);

  // Outer sum: all block assignments b_1..b_n with each block b appearing
  // occupations[b] times. Inner sum: excitation distributions i_1+..+i_n = k
  // with i_s within block b_s.
  std::vector<int> assign;
  assign.reserve(n);
  for (int b = 0; b < K; ++b) assign.insert(assign.end(), spec.occupations[b], b);
  std::sort(assign.begin(), assign.end());
  do {
    for_each_composition(
        n, spec.k, [&](int site) { return spec.blocks.excitations[assign[site]]; },
        [&](const std::vector<int>& digits) {
          std::vector<int> levels(n);
          for (int s = 0; s < n; ++s) levels[s] = spec.blocks.level_offset(assign[s]) + digits[s];
          out.amps(pack(levels, d)) += Cplx(1, 0);
        });
  } while (std::next_permutation(assign.begin(), assign.end()));
  return out;
}

PureState dicke(int n, int k) {
  if (k < 0 || k > n) throw SymlocError("dicke: need 0 <= k <= n");
  PureState out(n, 2);
  for (std::int64_t idx = 0; idx < out.dim(); ++idx) {
    int ones = 0;
    for (int s = 0; s < n; ++s) ones += out.digit(idx, s);
    if (ones == k) out.amps(idx) = Cplx(1, 0);
  }
  return out;
}

PureState w_state(int n) { return dicke(n, 1); }

PureState ghz(int n, int d) {
  PureState out(n, d);
  for (int lvl = 0; lvl < d; ++lvl) {
    std::int64_t idx = 0;
    for (int s = 0; s < n; ++s) idx = idx * d + lvl;
    out.amps(idx) = Cplx(1, 0);
  }
  return out;
}

namespace {

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Equal superposition of strings with k copies of `level` and n-k zeros,
// normalized, on qutrits.
PureState level_basis_state(int n, int k, int level) {
  if (k < 0 || k > n) throw SymlocError("basis state: need 0 <= k <= n");
  PureState out(n, 3);
  double coeff = 1.0 / std::sqrt(binom(n, k));
  for (std::int64_t idx = 0; idx < out.dim(); ++idx) {
    int hits = 0;
    bool ok = true;
    for (int s = 0; s < n; ++s) {
      int v = out.digit(idx, s);
      if (v == level)
        ++hits;
      else if (v != 0)
        ok = false;
    }
    if (ok && hits == k) out.amps(idx) = coeff;
  }
  return out;
}

}  // namespace

PureState snk(int n, int k) { return level_basis_state(n, k, 1); }
PureState fnk(int n, int k) { return level_basis_state(n, k, 2); }

PureState psi_mu(Cplx mu) {
  PureState out = ghz(4, 3);
  out.amps += mu * snk(4, 2).amps;
  return out;
}

PureState psi_derog_5qutrit() {
  BlockSpec blocks({1, 0});
  // Blocks stored non-increasing, so block 0 spans levels {0,1} and block 1
  // is level 2. The reference layout has the size-1 block first; relabel
  // levels so the size-1 block sits on level 0.
  DerogSpec e050(0, {0, 5}, blocks);
  DerogSpec e032(0, {2, 3}, blocks);
  DerogSpec e023(0, {3, 2}, blocks);
  DerogSpec e105(1, {5, 0}, blocks);
  PureState raw = derog_ek(e050);
  raw.amps += derog_ek(e032).amps;
  raw.amps += derog_ek(e023).amps;
  raw.amps += derog_ek(e105).amps;

  // Permute levels: size-1 block (our level 2) -> level 0; size-2 block
  // (our levels {0,1}) -> levels {1,2}.
  const int map[3] = {1, 2, 0};
  PureState out(5, 3);
  for (std::int64_t idx = 0; idx < raw.dim(); ++idx) {
    if (raw.amps(idx) == Cplx(0, 0)) continue;
    std::int64_t dst = 0;
    for (int s = 0; s < 5; ++s) dst = dst * 3 + map[raw.digit(idx, s)];
    out.amps(dst) = raw.amps(idx);
  }
  return out;
}

PureState psi2_state(const std::vector<Cplx>& b, int n) {
  if (static_cast<int>(b.size()) != n + 2) throw SymlocError("psi2_state: need n+2 coefficients");
  PureState out(n, 3);
  for (int k = 0; k <= n; ++k) out.amps += b[k] * snk(n, k).amps;
  out.amps += b[n + 1] * fnk(n, 1).amps;
  return out;
}

PureState psi1_state(const std::vector<Cplx>& a, int n) {
  if (static_cast<int>(a.size()) != n + 2) throw SymlocError("psi1_state: need n+2 coefficients");
  PureState out(n, 3);
  for (int k = 0; k <= n; ++k) out.amps += a[k] * snk(n, k).amps;
  out.amps += a[n + 1] * fnk(n, n).amps;
  return out;
}

}  // namespace symloc
