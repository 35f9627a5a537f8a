#include "vlab/counting.hpp"

#include <algorithm>
#include <cstring>
#include <functional>
#include <queue>
#include <string>
#include <unordered_map>
#include <utility>

#include "vlab/reduce.hpp"

namespace vlab {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

void require(bool ok, const char* msg) {
  if (!ok) throw PreconditionError(msg);
}

// -- key layout --------------------------------------------------------

// Bit widths of the power-sum fields: field e holds values in [s, s*N^e].
struct KeyLayout {
  std::vector<int> widths;
  int total_bits = 0;
};

KeyLayout key_layout(std::span<const int> exps, int s, u64 N) {
  KeyLayout lay;
  for (int e : exps) {
    BigInt maxv = BigInt(static_cast<unsigned long>(s)) * bigint_pow(N, static_cast<unsigned>(e));
    const int bits = static_cast<int>(mpz_sizeinbase(maxv.get_mpz_t(), 2));
    lay.widths.push_back(bits);
    lay.total_bits += bits;
  }
  return lay;
}

std::vector<std::pair<u64, u64>> first_digit_chunks(u64 N, u64 total) {
  u64 nchunks = static_cast<u64>(thread_count());
  if (total < (u64{1} << 16)) nchunks = 1;
  nchunks = std::min<u64>(nchunks, N);
  std::vector<std::pair<u64, u64>> chunks;
  for (u64 c = 0; c < nchunks; ++c) {
    const u64 a = 1 + c * N / nchunks;
    const u64 b = 1 + (c + 1) * N / nchunks;
    if (a < b) chunks.emplace_back(a, b);
  }
  return chunks;
}

// Merge the sorted per-chunk slices and return sum over keys of
// multiplicity^2, exactly.
template <typename T>
u128 merge_count_squares(const std::vector<T>& keys,
                         const std::vector<std::pair<std::size_t, std::size_t>>& slices) {
  u128 acc = 0;
  if (slices.size() == 1) {
    std::size_t i = slices[0].first;
    const std::size_t end = slices[0].second;
    while (i < end) {
      std::size_t j = i + 1;
      while (j < end && keys[j] == keys[i]) ++j;
      const u128 run = j - i;
      acc += run * run;
      i = j;
    }
    return acc;
  }
  using Head = std::pair<T, int>;
  std::priority_queue<Head, std::vector<Head>, std::greater<Head>> heap;
  std::vector<std::size_t> cur(slices.size());
  for (std::size_t c = 0; c < slices.size(); ++c) {
    cur[c] = slices[c].first;
    if (cur[c] < slices[c].second) heap.emplace(keys[cur[c]], static_cast<int>(c));
  }
  bool have_run = false;
  T run_key{};
  u128 run = 0;
  while (!heap.empty()) {
    auto [key, c] = heap.top();
    heap.pop();
    if (have_run && key == run_key) {
      ++run;
    } else {
      acc += run * run;
      run_key = key;
      run = 1;
      have_run = true;
    }
    if (++cur[c] < slices[c].second) heap.emplace(keys[cur[c]], c);
  }
  acc += run * run;
  return acc;
}

// -- packed meet-in-the-middle ------------------------------------------
//
// All fields fit side by side in T. Because each field is wide enough for
// the maximal sum s*N^e, adding per-element encodings never carries across
// field boundaries, so key(tuple) = sum_i enc(n_i).
template <typename T>
ExactCount mitm_packed(std::span<const int> exps, int s, u64 N,
                       const KeyLayout& lay, u64 total) {
  std::vector<T> enc(N + 1, T{0});
  for (u64 n = 1; n <= N; ++n) {
    T key = 0;
    int off = 0;
    for (std::size_t ei = 0; ei < exps.size(); ++ei) {
      u128 p = 1;
      for (int rep = 0; rep < exps[ei]; ++rep) p *= n;
      key |= static_cast<T>(p) << off;
      off += lay.widths[ei];
    }
    enc[n] = key;
  }

  std::vector<T> keys(total);
  const auto chunks = first_digit_chunks(N, total);
  u64 per_digit = 1;  // N^{s-1}
  for (int d = 1; d < s; ++d) per_digit *= N;

  std::vector<std::pair<std::size_t, std::size_t>> slices;
  for (const auto& [a, b] : chunks)
    slices.emplace_back((a - 1) * per_digit, (b - 1) * per_digit);

  parallel_blocks(static_cast<std::int64_t>(chunks.size()), [&](std::int64_t cb, std::int64_t ce) {
    for (std::int64_t c = cb; c < ce; ++c) {
      T* out = keys.data() + slices[c].first;
      const auto [n1a, n1b] = chunks[c];
      // depth-first over the remaining digits, innermost loop writes keys
      std::function<void(int, T)> descend = [&](int depth, T partial) {
        if (depth == s) {
          *out++ = partial;
          return;
        }
        if (depth == s - 1) {
          for (u64 n = 1; n <= N; ++n) *out++ = partial + enc[n];
          return;
        }
        for (u64 n = 1; n <= N; ++n) descend(depth + 1, partial + enc[n]);
      };
      for (u64 n1 = n1a; n1 < n1b; ++n1) descend(1, enc[n1]);
      std::sort(keys.begin() + slices[c].first, keys.begin() + slices[c].second);
    }
  });

  return ExactCount::from_u128(merge_count_squares(keys, slices));
}

// -- wide-key fallback ----------------------------------------------------
//
// Keys wider than 128 bits are encoded as fixed-width big-endian byte
// strings (one padded field per exponent), preserving exact equality.
std::string encode_wide_key(std::span<const BigInt> sums,
                            std::span<const int> widths) {
  std::string out;
  for (std::size_t i = 0; i < sums.size(); ++i) {
    const std::size_t field = (static_cast<std::size_t>(widths[i]) + 7) / 8;
    std::string buf(field, '\0');
    std::size_t written = 0;
    if (mpz_sgn(sums[i].get_mpz_t()) != 0)
      mpz_export(buf.data() + field - ((mpz_sizeinbase(sums[i].get_mpz_t(), 2) + 7) / 8),
                 &written, 1, 1, 1, 0, sums[i].get_mpz_t());
    out += buf;
  }
  return out;
}

ExactCount mitm_wide(std::span<const int> exps, int s, u64 N,
                     const KeyLayout& lay, u64 total) {
  const int ke = static_cast<int>(exps.size());
  std::vector<std::vector<BigInt>> pw(N + 1, std::vector<BigInt>(ke));
  for (u64 n = 1; n <= N; ++n)
    for (int ei = 0; ei < ke; ++ei)
      pw[n][ei] = bigint_pow(n, static_cast<unsigned>(exps[ei]));

  std::vector<std::string> keys;
  keys.reserve(total);
  std::vector<std::vector<BigInt>> sums(s + 1, std::vector<BigInt>(ke));
  std::function<void(int)> descend = [&](int depth) {
    for (u64 n = 1; n <= N; ++n) {
      for (int ei = 0; ei < ke; ++ei)
        mpz_add(sums[depth][ei].get_mpz_t(), sums[depth - 1][ei].get_mpz_t(),
                pw[n][ei].get_mpz_t());
      if (depth == s)
        keys.push_back(encode_wide_key(sums[depth], lay.widths));
      else
        descend(depth + 1);
    }
  };
  descend(1);
  std::sort(keys.begin(), keys.end());

  BigInt acc = 0;
  std::size_t i = 0;
  while (i < keys.size()) {
    std::size_t j = i + 1;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    const BigInt run(static_cast<unsigned long>(j - i));
    acc += run * run;
    i = j;
  }
  return ExactCount(acc);
}

ExactCount mitm_count(std::span<const int> exps, int s, u64 N,
                      const MemoryBudget& budget) {
  const KeyLayout lay = key_layout(exps, s, N);
  const BigInt entries = bigint_pow(N, static_cast<unsigned>(s));

  std::size_t key_bytes;
  if (lay.total_bits <= 64)
    key_bytes = 8;
  else if (lay.total_bits <= 128)
    key_bytes = 16;
  else {
    key_bytes = sizeof(std::string);
    for (int w : lay.widths) key_bytes += (static_cast<std::size_t>(w) + 7) / 8;
  }
  const BigInt need = entries * BigInt(static_cast<unsigned long>(key_bytes));
  BigInt allowed;
  mpz_import(allowed.get_mpz_t(), 1, 1, sizeof(budget.bytes), 0, 0, &budget.bytes);
  if (need > allowed)
    throw InstanceTooLarge("counting table needs " + need.get_str() +
                           " bytes, budget is " + allowed.get_str() +
                           " (set VLAB_BUDGET_BYTES to raise)");

  const u64 total = mpz_get_ui(entries.get_mpz_t());
  if (lay.total_bits <= 64) return mitm_packed<u64>(exps, s, N, lay, total);
  if (lay.total_bits <= 128) return mitm_packed<u128>(exps, s, N, lay, total);
  return mitm_wide(exps, s, N, lay, total);
}

// -- brute-force oracle ---------------------------------------------------

template <typename T>
struct SumOps;

template <>
struct SumOps<u128> {
  static u128 pow(u64 n, int e) {
    u128 p = 1;
    for (int i = 0; i < e; ++i) p *= n;
    return p;
  }
  static void add(u128& dst, const u128& a, const u128& b) { dst = a + b; }
};

template <>
struct SumOps<BigInt> {
  static BigInt pow(u64 n, int e) { return bigint_pow(n, static_cast<unsigned>(e)); }
  static void add(BigInt& dst, const BigInt& a, const BigInt& b) {
    mpz_add(dst.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }
};

template <typename T>
u64 brute_force_count(int k, int s, u64 N) {
  std::vector<std::vector<T>> pw(N + 1, std::vector<T>(k + 1));
  for (u64 n = 1; n <= N; ++n)
    for (int j = 1; j <= k; ++j) pw[n][j] = SumOps<T>::pow(n, j);

  const int half = s;
  std::vector<std::vector<T>> left(half + 1, std::vector<T>(k + 1));
  std::vector<std::vector<T>> right(half + 1, std::vector<T>(k + 1));
  u64 count = 0;

  std::function<void(int)> walk_right = [&](int depth) {
    for (u64 n = 1; n <= N; ++n) {
      for (int j = 1; j <= k; ++j)
        SumOps<T>::add(right[depth][j], right[depth - 1][j], pw[n][j]);
      if (depth == half) {
        bool match = true;
        for (int j = 1; j <= k && match; ++j)
          match = left[half][j] == right[half][j];
        if (match) ++count;
      } else {
        walk_right(depth + 1);
      }
    }
  };
  std::function<void(int)> walk_left = [&](int depth) {
    for (u64 n = 1; n <= N; ++n) {
      for (int j = 1; j <= k; ++j)
        SumOps<T>::add(left[depth][j], left[depth - 1][j], pw[n][j]);
      if (depth == half)
        walk_right(1);
      else
        walk_left(depth + 1);
    }
  };
  walk_left(1);
  return count;
}

}  // namespace

PowerSumKey power_sum_key(std::span<const std::uint64_t> tuple, int k) {
  require(k >= 1, "power_sum_key: k >= 1 required");
  PowerSumKey key;
  key.sums.reserve(k);
  for (int j = 1; j <= k; ++j) {
    BigInt sum = 0;
    for (u64 n : tuple) sum += bigint_pow(n, static_cast<unsigned>(j));
    key.sums.emplace_back(ExactCount(sum));
  }
  return key;
}

ExactCount count_vinogradov_bruteforce(const VinogradovInstance& inst) {
  require(inst.k >= 1 && inst.s >= 1 && inst.N >= 1,
          "count_vinogradov_bruteforce: k, s, N >= 1 required");
  const BigInt tuples = bigint_pow(inst.N, static_cast<unsigned>(2 * inst.s));
  if (tuples > 1000000000)
    throw InstanceTooLarge("brute-force enumeration capped at 10^9 tuples");

  // max power sum fits u128? 2s * N^k < 2^127
  const BigInt maxsum =
      BigInt(static_cast<unsigned long>(inst.s)) * bigint_pow(inst.N, static_cast<unsigned>(inst.k));
  const bool narrow = mpz_sizeinbase(maxsum.get_mpz_t(), 2) <= 126;
  const u64 c = narrow ? brute_force_count<u128>(inst.k, inst.s, inst.N)
                       : brute_force_count<BigInt>(inst.k, inst.s, inst.N);
  return ExactCount(c);
}

ExactCount count_vinogradov(const VinogradovInstance& inst, const MemoryBudget& budget) {
  require(inst.k >= 1 && inst.s >= 1 && inst.N >= 1,
          "count_vinogradov: k, s, N >= 1 required");
  std::vector<int> exps(inst.k);
  for (int j = 0; j < inst.k; ++j) exps[j] = j + 1;
  return mitm_count(exps, inst.s, inst.N, budget);
}

ExactCount count_hua_moment(int k, int m, std::uint64_t N, const MemoryBudget& budget) {
  require(k >= 1 && m >= 1 && N >= 1, "count_hua_moment: k, m, N >= 1 required");
  const int exps[1] = {k};
  return mitm_count(exps, m, N, budget);
}

// -- Waring representations ----------------------------------------------

namespace {

// Largest x with x^k <= limit, via incremental checked powering.
bool pow_leq(u64 x, int k, u64 limit, u64* out) {
  u128 p = 1;
  for (int i = 0; i < k; ++i) {
    p *= x;
    if (p > limit) return false;
  }
  *out = static_cast<u64>(p);
  return true;
}

}  // namespace

ExactCount count_waring_representations(std::uint64_t n, int s, int k) {
  require(n >= 1 && s >= 1 && k >= 1,
          "count_waring_representations: n, s, k >= 1 required");
  std::vector<std::unordered_map<u64, ExactCount>> memo(s + 1);
  std::function<ExactCount(u64, int)> rec = [&](u64 rem, int terms) -> ExactCount {
    if (terms == 0) return ExactCount(rem == 0 ? 1u : 0u);
    auto& level = memo[terms];
    if (auto it = level.find(rem); it != level.end()) return it->second;
    ExactCount acc;
    u64 xk = 0;
    for (u64 x = 1; pow_leq(x, k, rem, &xk); ++x) acc += rec(rem - xk, terms - 1);
    return level.emplace(rem, std::move(acc)).first->second;
  };
  return rec(n, s);
}

std::vector<ExactCount> waring_representation_table(std::uint64_t n_max, int s, int k) {
  require(s >= 1 && k >= 1, "waring_representation_table: s, k >= 1 required");
  std::vector<BigInt> cur(n_max + 1), next(n_max + 1);
  cur[0] = 1;
  for (int t = 0; t < s; ++t) {
    for (auto& v : next) v = 0;
    u64 xk = 0;
    for (u64 x = 1; pow_leq(x, k, n_max, &xk); ++x)
      for (u64 v = xk; v <= n_max; ++v)
        if (mpz_sgn(cur[v - xk].get_mpz_t()) != 0)
          mpz_add(next[v].get_mpz_t(), next[v].get_mpz_t(), cur[v - xk].get_mpz_t());
    std::swap(cur, next);
  }
  std::vector<ExactCount> out;
  out.reserve(n_max + 1);
  for (auto& v : cur) out.emplace_back(ExactCount(v));
  return out;
}

// -- near solutions --------------------------------------------------------

namespace {

NearSolutionCount near_solutions_exact(const std::vector<Rat>& t, int s, int k,
                                       const Rat& threshold, double guard_band,
                                       bool exact_inputs,
                                       const NearSolutionOptions& opts,
                                       const MemoryBudget& budget) {
  const u64 N = t.size();
  require(N >= 1, "count_near_solutions: at least one node required");
  require(s >= 1 && k >= 1, "count_near_solutions: s, k >= 1 required");
  require(sgn(threshold) > 0, "count_near_solutions: threshold must be positive");
  bool on_grid = true;
  for (u64 n = 1; n <= N; ++n) {
    Rat lo(static_cast<unsigned long>(n - 1), static_cast<unsigned long>(N));
    lo.canonicalize();
    Rat hi(static_cast<unsigned long>(n), static_cast<unsigned long>(N));
    hi.canonicalize();
    if (!(t[n - 1] > lo && t[n - 1] <= hi))
      throw PreconditionError("count_near_solutions: t_n must lie in ((n-1)/N, n/N]");
    if (t[n - 1] != hi) on_grid = false;
  }

  NearSolutionCount out;
  out.guard_band = guard_band;
  out.exact_inputs = exact_inputs;

  // Every difference of power sums is strictly below s in absolute value,
  // so a threshold of s or more admits all N^{2s} tuples.
  if (threshold >= Rat(static_cast<unsigned long>(s))) {
    out.count = ExactCount(bigint_pow(N, static_cast<unsigned>(2 * s)));
    return out;
  }

  // On the exact grid t_n = n/N the degree-j difference is an integer over
  // N^j; threshold <= N^-k forces every one of them to vanish, which is the
  // Vinogradov system.
  if (opts.allow_grid_reduction && on_grid) {
    Rat cutoff(1);
    cutoff /= Rat(BigInt(bigint_pow(N, static_cast<unsigned>(k))));
    if (threshold <= cutoff) {
      out.count = count_vinogradov({k, s, N}, budget);
      out.used_grid_reduction = true;
      return out;
    }
  }

  const BigInt tuples = bigint_pow(N, static_cast<unsigned>(2 * s));
  if (tuples > 1000000000)
    throw InstanceTooLarge("near-solution enumeration capped at 10^9 tuples");

  std::vector<std::vector<Rat>> pw(N + 1, std::vector<Rat>(k + 1));
  for (u64 n = 1; n <= N; ++n) {
    pw[n][1] = t[n - 1];
    for (int j = 2; j <= k; ++j) pw[n][j] = pw[n][j - 1] * t[n - 1];
  }

  const Rat guard = rat_from_double(guard_band);
  std::vector<std::vector<Rat>> left(s + 1, std::vector<Rat>(k + 1));
  std::vector<std::vector<Rat>> right(s + 1, std::vector<Rat>(k + 1));
  u64 count = 0, boundary = 0;
  Rat diff;

  std::function<void(int)> walk_right = [&](int depth) {
    for (u64 n = 1; n <= N; ++n) {
      for (int j = 1; j <= k; ++j)
        right[depth][j] = right[depth - 1][j] + pw[n][j];
      if (depth == s) {
        bool inside = true;
        bool near_edge = false;
        for (int j = 1; j <= k; ++j) {
          diff = left[s][j] - right[s][j];
          mpq_abs(diff.get_mpq_t(), diff.get_mpq_t());
          if (guard_band > 0 && !near_edge) {
            Rat margin = diff - threshold;
            mpq_abs(margin.get_mpq_t(), margin.get_mpq_t());
            if (margin <= guard) near_edge = true;
          }
          if (!(diff < threshold)) {
            inside = false;
            if (guard_band <= 0) break;
          }
        }
        if (inside) ++count;
        if (near_edge) ++boundary;
      } else {
        walk_right(depth + 1);
      }
    }
  };
  std::function<void(int)> walk_left = [&](int depth) {
    for (u64 n = 1; n <= N; ++n) {
      for (int j = 1; j <= k; ++j)
        left[depth][j] = left[depth - 1][j] + pw[n][j];
      if (depth == s)
        walk_right(1);
      else
        walk_left(depth + 1);
    }
  };
  walk_left(1);

  out.count = ExactCount(count);
  out.boundary_cases = boundary;
  return out;
}

}  // namespace

NearSolutionCount count_near_solutions(const std::vector<Rat>& t, int s, int k,
                                       const Rat& threshold,
                                       const NearSolutionOptions& opts,
                                       const MemoryBudget& budget) {
  return near_solutions_exact(t, s, k, threshold, 0.0, true, opts, budget);
}

NearSolutionCount count_near_solutions(const std::vector<double>& t, int s, int k,
                                       double threshold,
                                       const NearSolutionOptions& opts,
                                       const MemoryBudget& budget) {
  std::vector<Rat> tr;
  tr.reserve(t.size());
  for (double v : t) tr.push_back(rat_from_double(v));
  return near_solutions_exact(tr, s, k, rat_from_double(threshold), 0x1.0p-40,
                              false, opts, budget);
}

}  // namespace vlab
