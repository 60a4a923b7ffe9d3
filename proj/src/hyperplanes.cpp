#include "spinal/hyperplanes.hpp"

#include <algorithm>

namespace spinal {

std::size_t Hyperplane::size() const { return static_cast<std::size_t>(std::count(members.begin(), members.end(), true)); }

bool in_hyperplane(const FieldContext& ctx, std::uint64_t j, FieldElement x) {
  if (x.is_zero()) return true;
  return ctx.trace_of_power(ctx.log(x) + j) == 0;
}

std::vector<Hyperplane> build_hyperplanes(const FieldContext& ctx) {
  std::vector<Hyperplane> out;
  out.reserve(ctx.order());
  for (std::uint64_t j = 0; j < ctx.order(); ++j) {
    Hyperplane h{j, std::vector<bool>(ctx.size(), false)};
    for (std::uint64_t c = 0; c < ctx.size(); ++c) h.members[c] = in_hyperplane(ctx, j, ctx.element(c));
    out.push_back(std::move(h));
  }
  return out;
}

std::uint64_t pair_count(const FieldContext& ctx, std::uint64_t l1, std::uint64_t l2) {
  const std::uint64_t k = ctx.order();
  if (l1 >= k || l2 >= k) throw ContractViolation("exponent out of range [0, 2^n - 2]");
  if (l1 == l2) throw ContractViolation("pair_count needs distinct exponents");
  std::uint64_t count = 0;
  for (std::uint64_t j = 0; j < k; ++j) {
    if (ctx.trace_of_power(l1 + j) == 0 && ctx.trace_of_power(l2 + j) == 0) ++count;
  }
  return count;
}

DesignViolation::DesignViolation(Kind kind_, std::uint64_t a, std::uint64_t b, std::uint64_t exp, std::uint64_t act)
    : std::runtime_error([&] {
        std::string what;
        switch (kind_) {
          case Kind::BlockSize: what = "block " + std::to_string(a) + " has size "; break;
          case Kind::Replication: what = "point " + std::to_string(a) + " lies in "; break;
          case Kind::PairCount:
            what = "points {" + std::to_string(a) + ", " + std::to_string(b) + "} lie together in ";
            break;
        }
        return what + std::to_string(act) + " (expected " + std::to_string(exp) + ")";
      }()),
      kind(kind_),
      point_a(a),
      point_b(b),
      expected(exp),
      actual(act) {}

DesignParams verify_design(const std::vector<Hyperplane>& hyperplanes) {
  if (hyperplanes.empty()) throw ContractViolation("no hyperplanes");
  const std::uint64_t points = hyperplanes.front().members.size();  // 2^n, including zero
  const std::uint64_t v = points - 1;
  if (hyperplanes.size() != v) throw ContractViolation("expected one hyperplane per nonzero element");
  const std::uint64_t q = (v + 1) / 2;
  const DesignParams params{v, q - 1, q / 2 - 1};

  for (const Hyperplane& h : hyperplanes) {
    std::uint64_t size = 0;
    for (std::uint64_t c = 1; c < points; ++c) size += h.members[c] ? 1 : 0;
    if (size != params.block_size)
      throw DesignViolation(DesignViolation::Kind::BlockSize, h.index, h.index, params.block_size, size);
  }
  for (std::uint64_t x = 1; x < points; ++x) {
    std::uint64_t r = 0;
    for (const Hyperplane& h : hyperplanes) r += h.members[x] ? 1 : 0;
    if (r != params.block_size)
      throw DesignViolation(DesignViolation::Kind::Replication, x, x, params.block_size, r);
  }
  for (std::uint64_t x = 1; x < points; ++x) {
    for (std::uint64_t y = x + 1; y < points; ++y) {
      std::uint64_t together = 0;
      for (const Hyperplane& h : hyperplanes) together += (h.members[x] && h.members[y]) ? 1 : 0;
      if (together != params.lambda)
        throw DesignViolation(DesignViolation::Kind::PairCount, x, y, params.lambda, together);
    }
  }
  return params;
}

namespace {

void check_block_shape(std::uint64_t q) {
  if (q < 2) throw std::invalid_argument("q must be >= 2");
  if (q % 2 != 0) throw std::invalid_argument("q must be even: lambda = q/2 - 1 not integral");
}

// |B & (B + d)| for every d in Z_k.
std::vector<std::uint64_t> shift_overlaps(const BaseBlock& block) {
  std::vector<bool> in(block.k, false);
  for (auto p : block.positions) in[p] = true;
  std::vector<std::uint64_t> overlap(block.k, 0);
  for (std::uint64_t d = 0; d < block.k; ++d)
    for (auto p : block.positions) overlap[d] += in[(p + d) % block.k] ? 1 : 0;
  return overlap;
}

}  // namespace

BaseBlock make_base_block(std::uint64_t q, std::vector<std::uint64_t> positions) {
  check_block_shape(q);
  BaseBlock b{q, 2 * q - 1, std::move(positions)};
  std::sort(b.positions.begin(), b.positions.end());
  if (std::adjacent_find(b.positions.begin(), b.positions.end()) != b.positions.end())
    throw std::invalid_argument("base block positions repeat");
  if (b.positions.size() != q - 1) throw std::invalid_argument("base block must have q - 1 positions");
  if (!b.positions.empty() && b.positions.back() >= b.k)
    throw std::invalid_argument("base block position outside Z_k");
  return b;
}

DifferenceReport check_difference_property(const BaseBlock& block) {
  const auto overlap = shift_overlaps(block);
  const std::uint64_t lambda = block.q / 2 - 1;
  DifferenceReport report;
  for (std::uint64_t r1 = 0; r1 < block.k; ++r1) {
    for (std::uint64_t r2 = r1 + 1; r2 < block.k; ++r2) {
      // K_r1 & K_r2 is a translate of B & (B + (r2 - r1)).
      if (overlap[r2 - r1] == lambda) continue;
      report.all_shifts = false;
      if (r2 <= block.q - 1) report.short_range = false;
      if (!report.first_failure) report.first_failure = {r1, r2};
    }
  }
  return report;
}

BaseBlock extract_base_block(const FieldContext& ctx) {
  std::vector<std::uint64_t> positions;
  for (std::uint64_t j = 0; j < ctx.order(); ++j)
    if (in_hyperplane(ctx, j, ctx.alpha())) positions.push_back(j);
  return make_base_block(ctx.size() / 2, std::move(positions));
}

BaseBlock shift_block(const BaseBlock& block, std::uint64_t shift) {
  BaseBlock out = block;
  for (auto& p : out.positions) p = (p + shift) % block.k;
  std::sort(out.positions.begin(), out.positions.end());
  return out;
}

std::vector<BaseBlock> search_base_blocks(std::uint64_t q, std::uint64_t max_q) {
  check_block_shape(q);
  if (q > max_q)
    throw std::invalid_argument("q = " + std::to_string(q) + " exceeds the search cap " + std::to_string(max_q));
  const std::uint64_t k = 2 * q - 1;
  const std::uint64_t size = q - 1;
  const std::uint64_t lambda = q / 2 - 1;

  std::vector<BaseBlock> found;
  std::vector<std::uint64_t> pick(size);
  for (std::uint64_t i = 0; i < size; ++i) pick[i] = i;
  std::vector<std::uint64_t> diff_count(k);

  while (true) {
    // Each nonzero difference must occur exactly lambda times.
    std::fill(diff_count.begin(), diff_count.end(), 0);
    bool ok = true;
    for (std::uint64_t a = 0; a < size && ok; ++a) {
      for (std::uint64_t b = 0; b < size; ++b) {
        if (a == b) continue;
        if (++diff_count[(pick[a] + k - pick[b]) % k] > lambda) {
          ok = false;
          break;
        }
      }
    }
    if (ok) found.push_back(BaseBlock{q, k, pick});

    // next combination in lexicographic order
    std::int64_t i = static_cast<std::int64_t>(size) - 1;
    while (i >= 0 && pick[i] == k - size + static_cast<std::uint64_t>(i)) --i;
    if (i < 0) break;
    ++pick[i];
    for (std::uint64_t t = static_cast<std::uint64_t>(i) + 1; t < size; ++t) pick[t] = pick[t - 1] + 1;
  }
  return found;
}

}  // namespace spinal
