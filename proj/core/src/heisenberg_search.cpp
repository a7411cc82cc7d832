#include <algorithm>
#include <array>
#include <atomic>
#include <numeric>
#include <thread>

#include "pfmirror/errors.hpp"
#include "pfmirror/heisenberg.hpp"

namespace pfm {

namespace {

constexpr int kMaxDim = 4;

struct Mono {
  std::array<std::uint8_t, kMaxDim> perm{};
  std::array<std::uint8_t, kMaxDim> phase{};
};

struct Context {
  int d = 0;  // matrix size
  int r = 1;
  int n = 0;
  // required[a][b] = c means M_a M_b = ζ^c M_b M_a for sequence positions a > b
  std::vector<std::vector<int>> required;
};

Mono compose(const Mono& a, const Mono& b, const Context& ctx) {
  Mono out;
  for (int c = 0; c < ctx.d; ++c) {
    out.perm[c] = a.perm[b.perm[c]];
    out.phase[c] = static_cast<std::uint8_t>((b.phase[c] + a.phase[b.perm[c]]) % ctx.r);
  }
  return out;
}

// X Y = ζ^c Y X ?
bool relates(const Mono& x, const Mono& y, int c, const Context& ctx) {
  const Mono xy = compose(x, y, ctx);
  const Mono yx = compose(y, x, ctx);
  for (int i = 0; i < ctx.d; ++i) {
    if (xy.perm[i] != yx.perm[i]) return false;
    if (xy.phase[i] != (yx.phase[i] + c) % ctx.r) return false;
  }
  return true;
}

// All monomials with phase[0] = 0, lexicographic in (perm, phase).
std::vector<Mono> normalized_candidates(const Context& ctx) {
  std::vector<Mono> out;
  std::array<std::uint8_t, kMaxDim> perm{};
  std::iota(perm.begin(), perm.begin() + ctx.d, 0);
  do {
    int total = 1;
    for (int i = 1; i < ctx.d; ++i) total *= ctx.r;
    for (int code = 0; code < total; ++code) {
      Mono m;
      m.perm = perm;
      int rest = code;
      for (int i = ctx.d - 1; i >= 1; --i) {
        m.phase[i] = static_cast<std::uint8_t>(rest % ctx.r);
        rest /= ctx.r;
      }
      out.push_back(m);
    }
  } while (std::next_permutation(perm.begin(), perm.begin() + ctx.d));
  return out;
}

void partitions(int remaining, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(remaining - p, p, cur, out);
    cur.pop_back();
  }
}

// One representative per conjugacy class of monomial matrices: consecutive
// cycles, phase carried by the last element of each cycle, equal-length
// cycles with non-decreasing phases.
std::vector<Mono> conjugacy_representatives(const Context& ctx) {
  std::vector<std::vector<int>> parts;
  std::vector<int> cur;
  partitions(ctx.d, ctx.d, cur, parts);
  std::vector<Mono> out;
  for (const auto& part : parts) {
    const std::size_t cycles = part.size();
    std::vector<int> phases(cycles, 0);
    for (;;) {
      bool ok = true;
      for (std::size_t c = 1; c < cycles; ++c)
        if (part[c] == part[c - 1] && phases[c] < phases[c - 1]) ok = false;
      if (ok) {
        Mono m;
        int start = 0;
        for (std::size_t c = 0; c < cycles; ++c) {
          const int len = part[c];
          for (int i = 0; i < len; ++i) {
            m.perm[start + i] = static_cast<std::uint8_t>(i + 1 < len ? start + i + 1 : start);
            m.phase[start + i] = 0;
          }
          m.phase[start + len - 1] = static_cast<std::uint8_t>(phases[c]);
          start += len;
        }
        out.push_back(m);
      }
      std::size_t pos = 0;
      while (pos < cycles && ++phases[pos] == ctx.r) phases[pos++] = 0;
      if (pos == cycles) break;
    }
  }
  return out;
}

struct Searcher {
  const Context& ctx;
  const std::vector<Mono>& candidates;
  std::vector<Mono> seq;
  std::uint64_t nodes = 0;
  const std::atomic<bool>* stop = nullptr;

  bool extend() {
    const std::size_t level = seq.size();
    if (level == static_cast<std::size_t>(2 * ctx.n)) return true;
    for (const Mono& m : candidates) {
      if (stop && stop->load(std::memory_order_relaxed)) return false;
      bool ok = true;
      for (std::size_t b = 0; b < level && ok; ++b) ok = relates(m, seq[b], ctx.required[level][b], ctx);
      if (!ok) continue;
      ++nodes;
      seq.push_back(m);
      if (extend()) return true;
      seq.pop_back();
    }
    return false;
  }
};

// Sequence order V_1, U_1, V_2, U_2, ...; position 2j is V_{j+1}, 2k+1 is U_{k+1}.
Context make_context(int r, const IntMatrix& A, int rank, int e) {
  Context ctx;
  ctx.d = rank;
  ctx.r = r;
  ctx.n = static_cast<int>(A.rows());
  const int len = 2 * ctx.n;
  ctx.required.assign(len, std::vector<int>(len, 0));
  const auto mod = [r](long long x) { return static_cast<int>(((x % r) + r) % r); };
  for (int a = 0; a < len; ++a) {
    for (int b = 0; b < a; ++b) {
      const bool a_is_v = a % 2 == 0;
      const bool b_is_v = b % 2 == 0;
      if (a_is_v == b_is_v) continue;  // commuting families
      // V_j U_k = ω^{-a_kj} U_k V_j, hence U_k V_j = ω^{a_kj} V_j U_k.
      if (a_is_v) {
        const int j = a / 2, k = b / 2;
        ctx.required[a][b] = mod(-static_cast<long long>(e) * A(k, j));
      } else {
        const int k = a / 2, j = b / 2;
        ctx.required[a][b] = mod(static_cast<long long>(e) * A(k, j));
      }
    }
  }
  return ctx;
}

Monomial to_public(const Mono& m, int d) {
  Monomial out;
  for (int i = 0; i < d; ++i) {
    out.perm.push_back(m.perm[i]);
    out.phase.push_back(m.phase[i]);
  }
  return out;
}

}  // namespace

SearchOutcome brute_force_search(int r, const IntMatrix& A, int rank, int omega_exponent,
                                 const SearchLimits& limits) {
  if (r < 1) throw InputError("r must be positive");
  if (!A.square()) throw DimensionError("A must be square");
  const int n = static_cast<int>(A.rows());
  if (rank < 1 || rank > std::min(limits.max_rank, kMaxDim)) {
    throw GuardError("brute-force search supports rank 1.." +
                     std::to_string(std::min(limits.max_rank, kMaxDim)) + ", got " + std::to_string(rank));
  }
  if (n < 1 || n > limits.max_n) {
    throw GuardError("brute-force search supports n 1.." + std::to_string(limits.max_n) + ", got " +
                     std::to_string(n));
  }
  if (r > 255) throw GuardError("brute-force search supports r <= 255");

  const Context ctx = make_context(r, A, rank, omega_exponent);
  const std::vector<Mono> candidates = normalized_candidates(ctx);
  const std::vector<Mono> roots = conjugacy_representatives(ctx);

  // Each root is searched independently; the lowest-index success wins.
  unsigned workers = limits.threads != 0 ? limits.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(roots.size()));
  std::vector<std::optional<std::vector<Mono>>> results(roots.size());
  std::vector<std::uint64_t> node_counts(roots.size(), 0);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{roots.size()};
  std::atomic<bool> never{false};

  const auto work = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= roots.size() || idx > best.load()) return;
      Searcher s{ctx, candidates, {roots[idx]}, 1, &never};
      if (s.extend()) {
        results[idx] = s.seq;
        std::size_t cur = best.load();
        while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
        }
      }
      node_counts[idx] = s.nodes;
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  SearchOutcome out;
  const std::size_t winner = best.load();
  // Node count is reported up to and including the winning root so it does
  // not depend on thread scheduling.
  for (std::size_t i = 0; i < roots.size() && i <= winner; ++i) {
    if (i < winner || results[i]) out.nodes += node_counts[i];
  }
  if (winner < roots.size()) {
    const auto& seq = *results[winner];
    CocycleSet set;
    set.rank = rank;
    set.order = r;
    for (int j = 0; j < n; ++j) {
      set.V.push_back(monomial_to_matrix(to_public(seq[2 * j], rank), r));
      set.U.push_back(monomial_to_matrix(to_public(seq[2 * j + 1], rank), r));
    }
    if (!verify_cocycle(set, r, A, omega_exponent).valid) {
      throw std::logic_error("search produced a set that fails verification");
    }
    out.found = std::move(set);
  }
  return out;
}

}  // namespace pfm
