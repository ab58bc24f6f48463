#include "gmekit/partition.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "gmekit/errors.hpp"

namespace gmekit {

Partition::Partition(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  std::set<int> seen;
  for (auto& b : blocks_) {
    if (b.empty()) throw InvalidArgument("partition block is empty");
    std::sort(b.begin(), b.end());
    for (int i : b) {
      if (i < 0) throw InvalidArgument("negative subsystem index in partition");
      if (!seen.insert(i).second)
        throw InvalidArgument("subsystem " + std::to_string(i) + " appears twice in partition");
    }
  }
  std::sort(blocks_.begin(), blocks_.end(), [](const Block& a, const Block& b) { return a.front() < b.front(); });
}

std::vector<int> Partition::support() const {
  std::vector<int> out;
  for (const auto& b : blocks_) out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool Partition::covers(std::size_t parties) const {
  auto s = support();
  if (s.size() != parties) return false;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] != static_cast<int>(i)) return false;
  return true;
}

int Partition::block_of(int party) const {
  for (std::size_t k = 0; k < blocks_.size(); ++k)
    if (std::binary_search(blocks_[k].begin(), blocks_[k].end(), party)) return static_cast<int>(k);
  return -1;
}

Partition finest_partition(std::size_t parties) {
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < parties; ++i) blocks.push_back({static_cast<int>(i)});
  return Partition(std::move(blocks));
}

std::vector<Partition> all_bipartitions(std::size_t parties) {
  if (parties < 2) throw InvalidShape("bipartitions need at least 2 subsystems, got " + std::to_string(parties));
  if (parties > 20) throw SizeLimitError("too many subsystems for bipartition enumeration");
  std::vector<Partition> out;
  const unsigned rest = static_cast<unsigned>(parties - 1);
  // mask selects the parties among 1..m-1 that go with the second block
  for (unsigned long mask = 1; mask < (1ul << rest); ++mask) {
    Block first{0}, second;
    for (unsigned i = 0; i < rest; ++i) {
      if (mask & (1ul << i))
        second.push_back(static_cast<int>(i + 1));
      else
        first.push_back(static_cast<int>(i + 1));
    }
    out.emplace_back(std::vector<Block>{first, second});
  }
  return out;
}

std::vector<Partition> all_partitions(std::vector<int> subset) {
  if (subset.empty()) throw InvalidArgument("cannot partition an empty subset");
  if (subset.size() > kMaxPartitionParties)
    throw SizeLimitError("subset of size " + std::to_string(subset.size()) + " exceeds the Bell-number guard of " +
                         std::to_string(kMaxPartitionParties));
  std::sort(subset.begin(), subset.end());
  if (std::adjacent_find(subset.begin(), subset.end()) != subset.end())
    throw InvalidArgument("subset contains a repeated index");

  // restricted growth strings: label[i] <= 1 + max(label[0..i-1])
  const std::size_t n = subset.size();
  std::vector<int> label(n, 0);
  std::vector<Partition> out;
  while (true) {
    int nblocks = *std::max_element(label.begin(), label.end()) + 1;
    std::vector<Block> blocks(static_cast<std::size_t>(nblocks));
    for (std::size_t i = 0; i < n; ++i) blocks[static_cast<std::size_t>(label[i])].push_back(subset[i]);
    out.emplace_back(std::move(blocks));

    std::size_t i = n;
    while (i-- > 1) {
      int prefix_max = *std::max_element(label.begin(), label.begin() + static_cast<long>(i));
      if (label[i] <= prefix_max) {
        ++label[i];
        std::fill(label.begin() + static_cast<long>(i) + 1, label.end(), 0);
        break;
      }
    }
    if (i == 0) break;
  }
  return out;
}

bool is_coarser(const Partition& x, const Partition& y, CoarsenMode mode) {
  if (y.empty() || x == y) return false;
  const auto sx = x.support();
  const auto sy = y.support();
  if (!std::includes(sx.begin(), sx.end(), sy.begin(), sy.end())) return false;
  if (mode.kind == CoarsenMode::Kind::CombineOnly && sx != sy) return false;

  // Each surviving piece of an x block must land inside one y block.
  std::vector<int> pieces_per_block(y.size(), 0);
  for (const auto& xb : x.blocks()) {
    int target = -1;
    std::size_t kept = 0;
    for (int party : xb) {
      int yb = y.block_of(party);
      if (yb < 0) continue;
      ++kept;
      if (target >= 0 && target != yb) return false;
      target = yb;
    }
    if (kept == 0) continue;
    if (kept != xb.size() && !mode.allow_inner_discard) return false;
    ++pieces_per_block[static_cast<std::size_t>(target)];
  }
  if (mode.kind == CoarsenMode::Kind::DiscardOnly)
    return std::all_of(pieces_per_block.begin(), pieces_per_block.end(), [](int c) { return c == 1; });
  return true;
}

std::vector<Partition> coarsenings(const Partition& x, CoarsenMode mode, std::size_t min_blocks) {
  const auto sx = x.support();
  if (sx.size() > kMaxPartitionParties)
    throw SizeLimitError("coarsening enumeration is limited to " + std::to_string(kMaxPartitionParties) + " parties");
  std::set<Partition> found;
  for (unsigned mask = 1; mask < (1u << sx.size()); ++mask) {
    std::vector<int> subset;
    for (std::size_t i = 0; i < sx.size(); ++i)
      if (mask & (1u << i)) subset.push_back(sx[i]);
    for (auto& z : all_partitions(subset))
      if (z.size() >= min_blocks && is_coarser(x, z, mode)) found.insert(std::move(z));
  }
  return {found.begin(), found.end()};
}

std::vector<Partition> xi_set(const Partition& x, const Partition& y, bool allow_inner_discard) {
  const auto mode = CoarsenMode::any(allow_inner_discard);
  if (x != y && !is_coarser(x, y, mode)) throw RelationError("xi_set requires the second partition to be coarser");
  const auto sy = y.support();
  std::vector<Partition> out;
  for (auto& z : coarsenings(x, mode, 2)) {
    const auto sz = z.support();
    if (!std::includes(sz.begin(), sz.end(), sy.begin(), sy.end())) out.push_back(std::move(z));
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Partition parse_partition(std::string_view text, const std::vector<std::string>& labels) {
  // longest labels first so "A1" wins over "A"
  std::vector<int> order(labels.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return labels[static_cast<std::size_t>(a)].size() > labels[static_cast<std::size_t>(b)].size(); });

  std::vector<Block> blocks;
  std::set<int> seen;
  std::size_t start = 0;
  while (true) {
    std::size_t bar = text.find('|', start);
    std::string_view piece = trim(text.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start));
    if (piece.empty()) throw ParseError("empty block in partition '" + std::string(text) + "'");
    Block block;
    while (!piece.empty()) {
      bool matched = false;
      for (int idx : order) {
        const auto& lab = labels[static_cast<std::size_t>(idx)];
        if (!lab.empty() && piece.substr(0, lab.size()) == lab) {
          if (!seen.insert(idx).second)
            throw ParseError("subsystem '" + lab + "' repeated in partition '" + std::string(text) + "'");
          block.push_back(idx);
          piece.remove_prefix(lab.size());
          piece = trim(piece);
          matched = true;
          break;
        }
      }
      if (!matched) throw ParseError("unknown subsystem label at '" + std::string(piece) + "' in '" + std::string(text) + "'");
    }
    blocks.push_back(std::move(block));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return Partition(std::move(blocks));
}

std::string format_partition(const Partition& p, const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k) out += '|';
    for (int i : p.block(k)) {
      if (i >= static_cast<int>(labels.size())) throw InvalidArgument("partition index beyond label list");
      out += labels[static_cast<std::size_t>(i)];
    }
  }
  return out;
}

std::vector<std::string> default_labels(std::size_t parties) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < parties; ++i) {
    if (i < 26)
      out.emplace_back(1, static_cast<char>('A' + i));
    else
      out.push_back("S" + std::to_string(i));
  }
  return out;
}

}  // namespace gmekit
