#include <algorithm>
#include <random>

#include "realiz/errors.hpp"
#include "realiz/logic.hpp"

namespace realiz {

std::vector<GroundSet> build_universe(const UniverseSpec& spec, const std::vector<Stack>& pi_d) {
  std::vector<GroundSet> pure =
      spec.strategy == UniverseSpec::Strategy::Exhaustive
          ? exhaustive_universe(spec.rank, spec.pure_ceiling)
          : seeded_universe(spec.seeds, spec.ops, spec.pure_ceiling);

  std::vector<GroundSet> extra;
  // ℷx for the smallest nonempty pure sets
  for (GroundSet x : pure) {
    if (extra.size() >= spec.gimel_names) break;
    if (x.size() == 0) continue;
    std::vector<GroundSet> cells;
    for (GroundSet u : x.elements())
      for (const auto& s : pi_d) cells.push_back(kuratowski_pair(u, GroundSet::atom(s)));
    extra.push_back(GroundSet::set(cells));
  }

  // names whose entries are random (name, stack) cells over the pure part
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (!pure.empty() && !pi_d.empty()) {
    for (std::size_t i = 0; i < spec.random_names; ++i) {
      std::vector<GroundSet> cells;
      std::size_t names = 1 + rng() % std::min<std::size_t>(3, pure.size());
      for (std::size_t k = 0; k < names; ++k) {
        GroundSet b = pure[rng() % std::min<std::size_t>(pure.size(), 8)];
        std::size_t before = cells.size();
        for (const auto& s : pi_d)
          if (coin(rng) < spec.entry_density) cells.push_back(kuratowski_pair(b, GroundSet::atom(s)));
        if (cells.size() == before)
          cells.push_back(kuratowski_pair(b, GroundSet::atom(pi_d[rng() % pi_d.size()])));
      }
      extra.push_back(GroundSet::set(cells));
    }
  }

  if (extra.size() > spec.max_names) extra.resize(spec.max_names);
  std::size_t room = spec.max_names - extra.size();
  if (pure.size() > room) pure.resize(room);
  std::vector<GroundSet> out = pure;
  out.insert(out.end(), extra.begin(), extra.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace realiz
