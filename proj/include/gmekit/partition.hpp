#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace gmekit {

/// Strictly increasing list of 0-based subsystem indices.
using Block = std::vector<int>;

/// Largest number of subsystems the exhaustive partition routines accept.
inline constexpr std::size_t kMaxPartitionParties = 6;

/// A set of disjoint, nonempty blocks over (a subset of) the subsystems.
///
/// Stored in canonical form: indices sorted inside each block, blocks
/// ordered by their first index. Two partitions compare equal iff their
/// canonical forms are identical. The blocks need not cover every subsystem
/// of the enclosing system; uncovered subsystems are the discarded ones.
class Partition {
 public:
  Partition() = default;

  /// Canonicalizes `blocks`. Throws InvalidArgument on empty blocks,
  /// negative indices or an index shared between blocks.
  explicit Partition(std::vector<Block> blocks);

  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  const Block& block(std::size_t i) const { return blocks_.at(i); }
  std::size_t size() const noexcept { return blocks_.size(); }
  bool empty() const noexcept { return blocks_.empty(); }

  /// Sorted union of all blocks.
  std::vector<int> support() const;

  /// True when the blocks cover exactly {0, ..., parties-1}.
  bool covers(std::size_t parties) const;

  /// Index of the block holding `party`, or -1 when it is discarded.
  int block_of(int party) const;

  friend auto operator<=>(const Partition&, const Partition&) = default;
  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<Block> blocks_;
};

/// Which coarsening moves is_coarser may chain together.
///
/// DiscardOnly is the discarding relation, CombineOnly the combining
/// relation, Any allows both. With allow_inner_discard a single party may be
/// dropped from inside a multi-party block; otherwise only whole blocks go.
struct CoarsenMode {
  enum class Kind { DiscardOnly, CombineOnly, Any };
  Kind kind = Kind::Any;
  bool allow_inner_discard = true;

  static CoarsenMode discard_only(bool inner = true) { return {Kind::DiscardOnly, inner}; }
  static CoarsenMode combine_only() { return {Kind::CombineOnly, true}; }
  static CoarsenMode any(bool inner = true) { return {Kind::Any, inner}; }
};

/// A|B|...|Z over `parties` subsystems.
Partition finest_partition(std::size_t parties);

/// Every two-block partition covering `parties` subsystems, block holding 0
/// first, in increasing order of the block that does not contain 0 read as a
/// bitmask. Count is 2^(m-1) - 1. Throws InvalidShape when parties < 2.
std::vector<Partition> all_bipartitions(std::size_t parties);

/// All set partitions of `subset` (Bell(|subset|) of them), in restricted
/// growth order. Throws InvalidArgument on an empty or repeated subset and
/// SizeLimitError above kMaxPartitionParties.
std::vector<Partition> all_partitions(std::vector<int> subset);

/// True iff `y` is reachable from `x` by at least one move allowed by `mode`.
/// Splitting a block is never a move, and at least one block must survive.
bool is_coarser(const Partition& x, const Partition& y, CoarsenMode mode = {});

/// Every partition with at least `min_blocks` blocks that is strictly coarser
/// than `x` under `mode`, sorted canonically.
std::vector<Partition> coarsenings(const Partition& x, CoarsenMode mode = {}, std::size_t min_blocks = 2);

/// Partitions coarser than `x` (any moves) whose support holds none, or a
/// nonempty proper subset, of the subsystems of `y`. Only partitions with two
/// or more blocks are returned. Throws RelationError unless `y` equals `x`
/// or is coarser than it.
std::vector<Partition> xi_set(const Partition& x, const Partition& y, bool allow_inner_discard = true);

/// Parses "AB|C|D" style text over `labels`. Labels inside a block are
/// matched longest-first, so multi-character labels work as long as they are
/// not ambiguous. Throws ParseError on unknown labels, empty blocks or
/// repeated parties.
Partition parse_partition(std::string_view text, const std::vector<std::string>& labels);

/// Canonical text form, e.g. "AB|C|D".
std::string format_partition(const Partition& p, const std::vector<std::string>& labels);

/// Default labels "A", "B", ... for `parties` subsystems.
std::vector<std::string> default_labels(std::size_t parties);

}  // namespace gmekit
