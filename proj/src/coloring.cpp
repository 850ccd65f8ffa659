#include "ulam/coloring.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace ulam {

Coloring::Coloring(int n, std::uint64_t red_bits) : n_(n), bits_(red_bits) {
  if (n < 0 || n > 64) throw std::invalid_argument("coloring size must be in [0, 64]");
  if (n < 64) bits_ &= (1ull << n) - 1;
}

int Coloring::red_count() const { return __builtin_popcountll(bits_); }

namespace {

ColoringPair pair_from_bits(int n, std::uint64_t word) {
  std::uint64_t cand = word & ((n == 64) ? ~0ull : ((1ull << n) - 1));
  std::uint64_t guide = (word >> n) & ((n == 64) ? ~0ull : ((1ull << n) - 1));
  return ColoringPair{Coloring(n, cand), Coloring(n, guide)};
}

std::vector<ColoringPair> full_cube(int n) {
  const std::uint64_t total = 1ull << (2 * n);
  std::vector<ColoringPair> fam;
  fam.reserve(total);
  for (std::uint64_t w = 0; w < total; ++w) fam.push_back(pair_from_bits(n, w));
  return fam;
}

}  // namespace

std::vector<ColoringPair> coloring_family(int n, int d, const ColoringFamilyConfig& cfg) {
  if (n < 1) throw std::invalid_argument("coloring_family: n must be >= 1");
  if (d < 1) throw std::invalid_argument("coloring_family: d must be >= 1");
  if (n > 31) throw std::invalid_argument("coloring_family: n must be <= 31");
  const int a = 2 * n;
  const long long b = 12ll * d * d + 4ll * d;

  if (cfg.mode == FamilyMode::exhaustive) {
    if (a > cfg.exhaustive_limit)
      throw config_error("exhaustive coloring enumeration needs 2n <= " +
                         std::to_string(cfg.exhaustive_limit) + ", got 2n = " +
                         std::to_string(a));
    return full_cube(n);
  }

  // Randomized mode. When the pattern width covers every coordinate the only
  // way to realize all patterns is the cube itself; detect that instead of
  // over-allocating samples.
  if (b >= a) {
    if ((1ull << a) <= cfg.max_family) return full_cube(n);
    // Cube too large for the cap: degrade to capped sampling.
  }

  long double samples;
  if (b >= 62) {
    samples = static_cast<long double>(cfg.max_family);
  } else {
    const long double ln2 = 0.6931471805599453L;
    long double need = std::pow(2.0L, static_cast<long double>(b)) *
                       (b * ln2 + cfg.lambda * ln2 + b * std::log(static_cast<long double>(a)));
    samples = std::ceil(need);
  }
  std::uint64_t count = (samples > static_cast<long double>(cfg.max_family))
                            ? cfg.max_family
                            : static_cast<std::uint64_t>(samples);

  std::mt19937_64 rng(cfg.seed);
  std::vector<ColoringPair> fam;
  fam.reserve(count);
  const std::uint64_t mask = (a == 64) ? ~0ull : ((1ull << a) - 1);
  for (std::uint64_t i = 0; i < count; ++i) fam.push_back(pair_from_bits(n, rng() & mask));
  return fam;
}

std::vector<Block> compute_blocks(const Permutation& p, const Coloring& c, int d) {
  if (d < 1) throw std::invalid_argument("compute_blocks: d must be >= 1");
  if (c.size() != p.size())
    throw std::invalid_argument("coloring size does not match permutation");
  std::vector<Block> blocks;
  const int n = p.size();
  int block_start = -1, last_red = -1, reds = 0;
  for (int pos = 0; pos < n; ++pos) {
    if (!c.is_red(p.at(pos))) continue;
    if (block_start == -1) {
      block_start = pos;
      reds = 1;
    } else if (pos - last_red - 1 >= 3 * d) {
      blocks.push_back(Block{block_start, last_red, reds});
      block_start = pos;
      reds = 1;
    } else {
      ++reds;
    }
    last_red = pos;
  }
  if (block_start != -1) blocks.push_back(Block{block_start, last_red, reds});
  return blocks;
}

Coloring normalize_blocks(const Permutation& p, const Coloring& c, int d) {
  std::uint64_t cleared = 0;
  for (const Block& b : compute_blocks(p, c, d)) {
    if (b.red_count <= d) continue;
    for (int pos = b.start_pos; pos <= b.end_pos; ++pos) cleared |= 1ull << p.at(pos);
  }
  return c.with_blue(cleared);
}

}  // namespace ulam
