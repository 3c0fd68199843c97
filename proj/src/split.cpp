#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "hexagons/dataset.hpp"
#include "json_io.hpp"

namespace hexagons {

namespace {

// Uniform in [0, n) by rejection, so results do not depend on the standard
// library's distribution implementation.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

template <class T>
void shuffle_in_place(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[draw_below(rng, i)]);
}

// Distance, in tenths of a procedure, of a bucket from its exact share.
long off_share(std::size_t count, std::size_t n, long tenths) {
  return std::labs(10 * static_cast<long>(count) - tenths * static_cast<long>(n));
}

struct Group {
  std::string image;
  std::vector<std::string> ids;
};

Split hard_split(const std::vector<DrawingProcedure>& procs, std::mt19937_64& rng, Split out) {
  std::vector<Group> groups;
  std::map<std::string, std::size_t> where;
  for (const auto& p : procs) {
    auto [it, fresh] = where.emplace(p.image_id, groups.size());
    if (fresh) groups.push_back({p.image_id, {}});
    groups[it->second].ids.push_back(p.id);
  }
  shuffle_in_place(groups, rng);

  const std::size_t n = procs.size();
  const std::size_t max_train = (8 * n + 10) / 10, max_dev = (n + 10) / 10;
  const std::size_t width = max_dev + 1;
  const std::size_t states = (max_train + 1) * width;
  // choice[g][state]: bucket that group g went to on the way to `state`.
  std::vector<std::vector<std::int8_t>> choice(groups.size(),
                                               std::vector<std::int8_t>(states, -1));
  std::vector<char> reach(states, 0), next(states);
  reach[0] = 1;
  std::size_t seen = 0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    std::fill(next.begin(), next.end(), 0);
    const std::size_t k = groups[g].ids.size();
    for (std::size_t t = 0; t <= max_train; ++t)
      for (std::size_t d = 0; d <= max_dev; ++d) {
        if (!reach[t * width + d]) continue;
        const std::size_t test = seen - t - d;
        const std::size_t targets[3][2] = {{t + k, d}, {t, d + k}, {t, d}};
        for (int b = 0; b < 3; ++b) {
          const std::size_t nt = targets[b][0], nd = targets[b][1];
          if (nt > max_train || nd > max_dev) continue;
          if (b == 2 && test + k > max_dev) continue;
          const std::size_t s = nt * width + nd;
          if (next[s]) continue;
          next[s] = 1;
          choice[g][s] = static_cast<std::int8_t>(b);
        }
      }
    reach.swap(next);
    seen += k;
  }

  long best = -1;
  std::size_t best_state = 0;
  for (std::size_t t = 0; t <= max_train; ++t)
    for (std::size_t d = 0; d <= max_dev; ++d) {
      if (!reach[t * width + d] || t + d > n) continue;
      const std::size_t test = n - t - d;
      const long a = off_share(t, n, 8), b = off_share(d, n, 1), c = off_share(test, n, 1);
      if (a > 10 || b > 10 || c > 10) continue;
      if (best < 0 || a + b + c < best) {
        best = a + b + c;
        best_state = t * width + d;
      }
    }
  if (best < 0) {
    const auto largest = std::max_element(groups.begin(), groups.end(), [](auto& x, auto& y) {
      return x.ids.size() < y.ids.size() || (x.ids.size() == y.ids.size() && x.image > y.image);
    });
    throw InfeasibleSplitError("hard split infeasible: image " + largest->image + " has " +
                                   std::to_string(largest->ids.size()) +
                                   " procedures and cannot fit the 80/10/10 buckets",
                               largest->image);
  }

  std::vector<int> bucket(groups.size());
  std::size_t state = best_state;
  for (std::size_t g = groups.size(); g-- > 0;) {
    const int b = choice[g][state];
    bucket[g] = b;
    const std::size_t k = groups[g].ids.size();
    std::size_t t = state / width, d = state % width;
    if (b == 0) t -= k;
    if (b == 1) d -= k;
    state = t * width + d;
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    auto& dest = bucket[g] == 0 ? out.train : bucket[g] == 1 ? out.dev : out.test;
    dest.insert(dest.end(), groups[g].ids.begin(), groups[g].ids.end());
  }
  return out;
}

}  // namespace

std::string_view split_mode_name(SplitMode m) { return m == SplitMode::random ? "random" : "hard"; }

SplitTargets split_targets(std::size_t n) {
  const std::size_t train = (8 * n + 5) / 10;
  const std::size_t dev = (n + 5) / 10;
  return {train, dev, n - train - dev};
}

Split make_split(const std::vector<DrawingProcedure>& procs, SplitMode mode, std::uint64_t seed) {
  if (procs.size() < kMinSplitProcedures)
    throw UsageError("a split needs at least " + std::to_string(kMinSplitProcedures) +
                     " procedures, got " + std::to_string(procs.size()));
  std::set<std::string> ids;
  for (const auto& p : procs)
    if (!ids.insert(p.id).second) throw UsageError("duplicate procedure id " + p.id);

  Split out;
  out.mode = mode;
  out.seed = seed;
  std::mt19937_64 rng(seed);
  if (mode == SplitMode::hard) return hard_split(procs, rng, std::move(out));

  std::vector<std::string> order;
  for (const auto& p : procs) order.push_back(p.id);
  shuffle_in_place(order, rng);
  const SplitTargets t = split_targets(order.size());
  out.train.assign(order.begin(), order.begin() + static_cast<long>(t.train));
  out.dev.assign(order.begin() + static_cast<long>(t.train),
                 order.begin() + static_cast<long>(t.train + t.dev));
  out.test.assign(order.begin() + static_cast<long>(t.train + t.dev), order.end());
  return out;
}

std::string split_to_json(const Split& split) {
  return jsonio::json{{"mode", std::string(split_mode_name(split.mode))},
                      {"seed", split.seed},
                      {"train", split.train},
                      {"dev", split.dev},
                      {"test", split.test}}
      .dump();
}

}  // namespace hexagons
