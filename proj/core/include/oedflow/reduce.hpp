#pragma once

namespace oedflow {

/// Fixed-order pairwise sum of term(0) + ... + term(n-1) by recursive
/// halving. The top-level split of a duplicated array [A A] lands exactly on
/// the boundary, so averaging over a doubled ensemble reproduces the original
/// result bit for bit; this property backs the duplication invariants.
template <typename F>
auto pairwise_sum(int n, F&& term) -> decltype(term(0)) {
  struct Rec {
    F& f;
    auto run(int lo, int hi) -> decltype(f(0)) {
      if (hi - lo == 1) return f(lo);
      const int mid = lo + (hi - lo) / 2;
      return run(lo, mid) + run(mid, hi);
    }
  } rec{term};
  return rec.run(0, n);
}

}  // namespace oedflow
