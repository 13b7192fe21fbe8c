#include "shatter/engine.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <string>

#include "ff/space.hpp"
#include "util/error.hpp"
#include "util/parallel.hpp"

namespace vc2::shatter {

namespace {

constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint64_t kAddTableLimit = 4096;

void check_points(const MembershipOracle& a, const std::vector<Vector>& pts, const char* what) {
  for (const auto& v : pts)
    require(v.field() == a.field() && v.size() == a.dimension(), std::string(what) + " has a vector of the wrong shape");
}

/// Membership bitmap plus fast index arithmetic over the whole group.
class GroupTable {
 public:
  GroupTable(const MembershipOracle& a, unsigned threads)
      : space_(a.field(), a.dimension(), kGroupEnumerationLimit), member_(space_.size()) {
    const std::uint64_t n = space_.size();
    constexpr std::uint64_t kChunk = 4096;
    parallel_for((n + kChunk - 1) / kChunk, threads, [&](std::size_t c) {
      const std::uint64_t end = std::min<std::uint64_t>(n, (c + 1) * kChunk);
      for (std::uint64_t i = c * kChunk; i < end; ++i) member_[i] = a.contains(space_.at(i)) ? 1 : 0;
    });
    if (n <= kAddTableLimit) {
      add_.resize(n * n);
      for (std::uint64_t i = 0; i < n; ++i)
        for (std::uint64_t j = 0; j < n; ++j) add_[i * n + j] = static_cast<std::uint32_t>(space_.add(i, j));
    }
  }

  std::uint64_t size() const noexcept { return space_.size(); }
  const ff::Space& space() const noexcept { return space_; }
  std::uint64_t sum(std::uint64_t a, std::uint64_t b) const noexcept {
    return add_.empty() ? space_.add(a, b) : add_[a * space_.size() + b];
  }
  bool member(std::uint64_t i) const noexcept { return member_[i] != 0; }

 private:
  ff::Space space_;
  std::vector<std::uint8_t> member_;
  std::vector<std::uint32_t> add_;
};

/// Counts distinct patterns without clearing a 2^k array per candidate.
class PatternCounter {
 public:
  explicit PatternCounter(std::size_t max_bits) : stamp_(std::size_t{1} << max_bits, 0) {}

  /// True iff all 2^bits patterns occur in pats.
  bool complete(const std::vector<std::uint32_t>& pats, std::size_t bits) {
    ++gen_;
    const std::size_t target = std::size_t{1} << bits;
    std::size_t seen = 0;
    for (std::uint32_t v : pats) {
      if (stamp_[v] != gen_) {
        stamp_[v] = gen_;
        if (++seen == target) return true;
      }
    }
    return false;
  }

 private:
  std::vector<std::uint64_t> stamp_;
  std::uint64_t gen_ = 0;
};

struct SearchBest {
  std::vector<std::uint64_t> set;  // element indices, set[0] == 0
  std::uint64_t candidates = 0;
};

// A shattered k-set needs 2^k distinct translates.
std::size_t max_bits(std::size_t k_max, std::uint64_t n) {
  std::size_t b = 0;
  while (b < k_max && (std::uint64_t{1} << (b + 1)) <= n) ++b;
  return b;
}

class VcSearch {
 public:
  VcSearch(const GroupTable& g, std::size_t k_max, const std::atomic<std::uint64_t>& cutoff)
      : g_(g), k_max_(k_max), cutoff_(cutoff), counter_(max_bits(k_max, g.size())) {}

  /// Explores every shattered set {0, first, ...} with increasing indices.
  SearchBest run(std::uint64_t first, const std::vector<std::uint32_t>& base) {
    best_ = {};
    std::vector<std::uint64_t> cur{0};
    extend(cur, base, first, first + 1);
    return best_;
  }

 private:
  void extend(std::vector<std::uint64_t>& cur, const std::vector<std::uint32_t>& pats, std::uint64_t lo,
              std::uint64_t hi) {
    const std::size_t bit = cur.size();
    const std::uint64_t n = g_.size();
    std::vector<std::uint32_t> next(n);
    for (std::uint64_t s = lo; s < hi; ++s) {
      if (cur.size() == 1 && cutoff_.load(std::memory_order_relaxed) < s) return;
      for (std::uint64_t y = 0; y < n; ++y)
        next[y] = pats[y] | (static_cast<std::uint32_t>(g_.member(g_.sum(s, y))) << bit);
      ++best_.candidates;
      if (!counter_.complete(next, bit + 1)) continue;
      cur.push_back(s);
      if (cur.size() > best_.set.size()) best_.set = cur;
      if (cur.size() < k_max_ && (std::uint64_t{1} << (cur.size() + 1)) <= n) extend(cur, next, s + 1, n);
      cur.pop_back();
      if (best_.set.size() >= k_max_) return;
    }
  }

  const GroupTable& g_;
  std::size_t k_max_;
  const std::atomic<std::uint64_t>& cutoff_;
  PatternCounter counter_;
  SearchBest best_;
};

ShatterCertificate make_certificate(const MembershipOracle& a, std::vector<Vector> s, std::vector<Vector> witnesses) {
  return ShatterCertificate{a.field(), a.dimension(), a.describe(), std::move(s), std::move(witnesses)};
}

}  // namespace

std::uint32_t pattern_signature(const MembershipOracle& a, const std::vector<Vector>& s, const Vector& y) {
  require(s.size() <= kMaxShatterSize, "pattern signatures are limited to 20 points");
  check_points(a, s, "S");
  check_points(a, {y}, "translate");
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (a.contains(s[i] + y)) bits |= std::uint32_t{1} << i;
  return bits;
}

std::variant<ShatterCertificate, NotShattered> shatters(const MembershipOracle& a, const std::vector<Vector>& s,
                                                        unsigned threads) {
  if (s.size() > kMaxShatterSize) fail(ErrorCode::limit_exceeded, "shattering checks are limited to 20 points");
  check_points(a, s, "S");
  const ff::Space space(a.field(), a.dimension(), kGroupEnumerationLimit);
  const std::size_t patterns = std::size_t{1} << s.size();

  // Fixed chunking keeps the merge independent of the worker count.
  constexpr std::size_t kChunks = 64;
  const std::uint64_t n = space.size();
  const std::uint64_t per = (n + kChunks - 1) / kChunks;
  std::vector<std::vector<std::uint64_t>> first(kChunks);
  parallel_for(kChunks, resolve_threads(threads), [&](std::size_t c) {
    auto& f = first[c];
    f.assign(patterns, kNone);
    const std::uint64_t end = std::min(n, (c + 1) * per);
    for (std::uint64_t i = c * per; i < end; ++i) {
      const Vector y = space.at(i);
      std::uint32_t bits = 0;
      for (std::size_t k = 0; k < s.size(); ++k)
        if (a.contains(s[k] + y)) bits |= std::uint32_t{1} << k;
      if (f[bits] == kNone) f[bits] = i;
    }
  });

  std::vector<std::uint64_t> best(patterns, kNone);
  for (const auto& f : first)
    for (std::size_t t = 0; t < patterns; ++t) best[t] = std::min(best[t], f[t]);
  for (std::size_t t = 0; t < patterns; ++t)
    if (best[t] == kNone) return NotShattered{static_cast<std::uint32_t>(t)};

  std::vector<Vector> witnesses;
  witnesses.reserve(patterns);
  for (std::uint64_t idx : best) witnesses.push_back(space.at(idx));
  return make_certificate(a, s, std::move(witnesses));
}

VcDimResult vc_dim(const MembershipOracle& a, std::size_t k_max, unsigned threads) {
  k_max = std::min(k_max, kMaxShatterSize);
  const unsigned workers = resolve_threads(threads);
  const GroupTable g(a, workers);
  const std::uint64_t n = g.size();

  VcDimResult out{0, make_certificate(a, {}, {Vector(a.field(), a.dimension())}), 0};

  // {0} is shattered iff A is neither empty nor everything.
  std::vector<std::uint32_t> base(n);
  bool any_in = false, any_out = false;
  for (std::uint64_t y = 0; y < n; ++y) {
    base[y] = g.member(y) ? 1 : 0;
    (base[y] ? any_in : any_out) = true;
  }
  out.candidates = 1;
  if (k_max == 0 || !any_in || !any_out) return out;

  SearchBest best;
  best.set = {0};
  if (k_max > 1 && n >= 4) {
    std::atomic<std::uint64_t> cutoff{kNone};
    std::vector<SearchBest> per_first(n);
    parallel_for(n - 1, workers, [&](std::size_t i) {
      const std::uint64_t first = i + 1;
      if (cutoff.load(std::memory_order_relaxed) < first) return;
      VcSearch search(g, k_max, cutoff);
      per_first[first] = search.run(first, base);
      if (per_first[first].set.size() >= k_max) {
        std::uint64_t cur = cutoff.load();
        while (first < cur && !cutoff.compare_exchange_weak(cur, first)) {
        }
      }
    });
    for (std::uint64_t f = 1; f < n; ++f) {
      best.candidates += per_first[f].candidates;
      const auto& cand = per_first[f].set;
      if (cand.size() > best.set.size() || (cand.size() == best.set.size() && cand < best.set)) best.set = cand;
    }
  }
  out.candidates += best.candidates;

  std::vector<Vector> s;
  for (std::uint64_t idx : best.set) s.push_back(g.space().at(idx));
  auto res = shatters(a, s, workers);
  if (!std::holds_alternative<ShatterCertificate>(res))
    fail(ErrorCode::internal, "search reported a set that does not re-check as shattered");
  out.dimension = s.size();
  out.certificate = std::get<ShatterCertificate>(std::move(res));
  return out;
}

bool vc2_realizes(const MembershipOracle& a, const std::vector<Vector>& x, const std::vector<Vector>& y,
                  const ContainmentMap& phi, const Vector& z) {
  require(x.size() == phi.side() && y.size() == phi.side(), "grid size does not match the containment map");
  check_points(a, x, "X");
  check_points(a, y, "Y");
  check_points(a, {z}, "z");
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Vector xz = x[i] + z;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (!phi.assigned(i, j)) continue;
      if (a.contains(xz + y[j]) != phi.at(i, j)) return false;
    }
  }
  return true;
}

ContainmentMap realized_map(const MembershipOracle& a, const std::vector<Vector>& x, const std::vector<Vector>& y,
                            const Vector& z) {
  require(x.size() == y.size(), "X and Y must have equal length");
  ContainmentMap phi(x.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) phi.set(i, j, a.contains(x[i] + y[j] + z));
  return phi;
}

std::uint64_t row_major_order(const ContainmentMap& phi) {
  const std::size_t cells = phi.side() * phi.side();
  std::uint64_t key = 0;
  for (std::size_t c = 0; c < cells; ++c) {
    const bool in_a = (phi.bits() >> c) & 1U;
    if (!in_a) key |= std::uint64_t{1} << (cells - 1 - c);
  }
  return key;
}

Vc2Outcome vc2_shatters(const MembershipOracle& a, const std::vector<Vector>& x, const std::vector<Vector>& y,
                        const ZStrategy& strategy, unsigned threads) {
  require(!x.empty() && x.size() == y.size(), "X and Y must be nonempty and of equal length");
  require(x.size() <= 4, "quadratic shattering is limited to grids of side 4");
  check_points(a, x, "X");
  check_points(a, y, "Y");
  require(x[0].is_zero() && y[0].is_zero(), "x_0 and y_0 must be 0");

  const std::size_t side = x.size();
  const std::uint64_t maps = ContainmentMap::count(side);
  const unsigned workers = resolve_threads(threads);
  std::vector<std::optional<Vector>> found(maps);

  if (std::holds_alternative<ExhaustiveZ>(strategy)) {
    const ff::Space space(a.field(), a.dimension(), std::get<ExhaustiveZ>(strategy).limit);
    const std::uint64_t n = space.size();
    constexpr std::size_t kChunks = 64;
    const std::uint64_t per = (n + kChunks - 1) / kChunks;
    std::vector<std::vector<std::uint64_t>> first(kChunks);
    parallel_for(kChunks, workers, [&](std::size_t c) {
      auto& f = first[c];
      f.assign(maps, kNone);
      const std::uint64_t end = std::min(n, (c + 1) * per);
      for (std::uint64_t i = c * per; i < end; ++i) {
        const auto bits = realized_map(a, x, y, space.at(i)).bits();
        if (f[bits] == kNone) f[bits] = i;
      }
    });
    for (std::uint64_t m = 0; m < maps; ++m) {
      std::uint64_t best = kNone;
      for (const auto& f : first) best = std::min(best, f[m]);
      if (best != kNone) found[m] = space.at(best);
    }
  } else {
    const auto& finder = std::get<ZFinder>(strategy);
    if (!finder) fail(ErrorCode::invalid_argument, "no z-finder supplied");
    parallel_for(maps, workers, [&](std::size_t m) {
      const ContainmentMap phi(side, m);
      auto z = finder(phi, m);
      if (z && !vc2_realizes(a, x, y, phi, *z))
        fail(ErrorCode::verification_failed, "z-finder returned a shift that does not realise map " + std::to_string(m));
      found[m] = std::move(z);
    });
  }

  Vc2Outcome out;
  for (std::uint64_t m = 0; m < maps; ++m) {
    if (found[m]) continue;
    const ContainmentMap phi(side, m);
    if (!out.failed_at || row_major_order(phi) < row_major_order(*out.failed_at)) out.failed_at = phi;
  }
  if (out.failed_at) return out;

  QuadShatterCertificate cert{a.field(), a.dimension(), a.describe(), x, y, {}};
  cert.witnesses.reserve(maps);
  for (std::uint64_t m = 0; m < maps; ++m) cert.witnesses.emplace_back(ContainmentMap(side, m), std::move(*found[m]));
  out.certificate = std::move(cert);
  return out;
}

}  // namespace vc2::shatter
