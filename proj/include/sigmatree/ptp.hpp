#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sigmatree/multiplicity.hpp"

namespace sigmatree {

/// Dense index into one of the PTP tables. Distinct tags keep type and
/// class indices from being mixed up.
template <class Tag>
struct Index {
  std::int32_t value = -1;

  constexpr Index() = default;
  constexpr explicit Index(std::int32_t v) : value(v) {}

  constexpr bool valid() const noexcept { return value >= 0; }
  constexpr std::size_t pos() const noexcept { return static_cast<std::size_t>(value); }

  friend constexpr auto operator<=>(Index, Index) = default;
};

using TypeIndex = Index<struct TypeTag>;
using ClassIndex = Index<struct ClassTag>;

/// A G-orbit of oriented edges, seen from its initial vertex type.
struct EdgeClass {
  std::string id;
  TypeIndex from;
  TypeIndex to;
  ClassIndex reverse;
  Multiplicity mult = Multiplicity::finite(1);  // star edges of this class at a `from` vertex

  friend bool operator==(const EdgeClass&, const EdgeClass&) = default;
};

/// Quotient graph of a G-tree: vertex orbits and oriented edge orbits.
class TypedGraph {
 public:
  std::vector<std::string> vertex_types;
  std::vector<EdgeClass> edge_classes;

  std::size_t type_count() const noexcept { return vertex_types.size(); }
  std::size_t class_count() const noexcept { return edge_classes.size(); }

  const EdgeClass& cls(ClassIndex c) const { return edge_classes.at(c.pos()); }
  const std::string& type_id(TypeIndex t) const { return vertex_types.at(t.pos()); }

  std::optional<TypeIndex> find_type(std::string_view id) const;
  std::optional<ClassIndex> find_class(std::string_view id) const;

  /// Classes whose initial type is `t`, in declaration order.
  std::vector<ClassIndex> star(TypeIndex t) const;
  Multiplicity star_size(TypeIndex t) const;

  friend bool operator==(const TypedGraph&, const TypedGraph&) = default;
};

struct CellSource {
  ClassIndex cls;        // upstairs class
  Multiplicity fiber;    // preimages per covered target edge

  friend bool operator==(const CellSource&, const CellSource&) = default;
};

/// One block of the star map at an upstairs vertex type: the listed source
/// classes map onto `coverage` distinct edges of class `target`, each of which
/// receives `fiber` edges of every source.
struct Cell {
  TypeIndex at;              // upstairs type
  ClassIndex target;         // downstairs class
  Multiplicity coverage;
  std::vector<CellSource> sources;

  /// Preimages of a single covered target edge.
  Multiplicity preimage_count() const;
  /// At least two distinct preimages land on each covered edge.
  bool collapsing() const { return preimage_count().at_least(2); }

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Periodic tree-pair: quotient-level description of an equivariant morphism
/// q from the upstairs tree onto the downstairs tree.
///
/// Instances are only produced by `parse_and_validate` / `validate`, so every
/// invariant of the document format holds on a `Ptp` value.
class Ptp {
 public:
  const std::string& name() const noexcept { return name_; }
  const TypedGraph& upstairs() const noexcept { return upstairs_; }
  const TypedGraph& downstairs() const noexcept { return downstairs_; }
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  TypeIndex image_type(TypeIndex upstairs_type) const { return vertex_map_.at(upstairs_type.pos()); }
  const std::vector<TypeIndex>& vertex_map() const noexcept { return vertex_map_; }

  /// Index of the cell holding upstairs class `c`.
  std::size_t cell_of(ClassIndex c) const { return cell_of_class_.at(c.pos()); }
  /// Cells located at an upstairs type, in document order.
  std::vector<std::size_t> cells_at(TypeIndex upstairs_type) const;
  /// First nominal target slot of a cell among the cells at the same type
  /// sharing its target class.
  std::int64_t slot_offset(std::size_t cell) const { return slot_offset_.at(cell); }

  friend bool operator==(const Ptp& a, const Ptp& b) {
    return a.name_ == b.name_ && a.upstairs_ == b.upstairs_ && a.downstairs_ == b.downstairs_ &&
           a.vertex_map_ == b.vertex_map_ && a.cells_ == b.cells_;
  }

 private:
  friend class PtpBuilder;

  std::string name_;
  TypedGraph upstairs_;
  TypedGraph downstairs_;
  std::vector<TypeIndex> vertex_map_;
  std::vector<Cell> cells_;
  std::vector<std::size_t> cell_of_class_;
  std::vector<std::int64_t> slot_offset_;
  std::vector<std::string> warnings_;
};

struct ValidationIssue {
  std::string code;       // stable machine-readable tag, e.g. "product_law"
  std::string message;
  std::vector<std::string> ids;  // offending identifiers
};

struct ValidationReport {
  std::vector<ValidationIssue> errors;
  std::vector<ValidationIssue> warnings;

  bool ok() const noexcept { return errors.empty(); }
  std::string summary() const;
};

struct ParseResult {
  std::optional<Ptp> ptp;  // set iff report.ok()
  ValidationReport report;
};

/// Parses a PTP document (JSON text) and checks every model invariant.
ParseResult parse_and_validate(std::string_view text);

/// Same as parse_and_validate but throws Error(InvalidInput) on failure.
Ptp load_ptp(std::string_view text);

/// Canonical document text; parse_and_validate(serialize(p)) reproduces p.
std::string serialize(const Ptp& ptp);

struct Deficiency {
  TypeIndex upstairs_type;
  ClassIndex target;       // downstairs class not fully covered
  std::int64_t covered;
  std::int64_t required;
};

struct LocalProperties {
  bool locally_surjective = false;
  std::vector<Deficiency> deficiencies;
  std::vector<TypeIndex> unreached_types;   // downstairs types outside the vertex map image
  bool locally_injective = false;
  std::vector<std::size_t> collapsing_cells;  // indices into Ptp::cells()
};

LocalProperties local_properties(const Ptp& ptp);

struct ApplicabilityReport {
  bool upstairs_minimal = false;
  bool downstairs_locally_finite = false;
  bool locally_surjective = false;
  bool not_locally_injective = false;
  bool main_theorem_applies = false;
};

ApplicabilityReport applicability_check(const Ptp& ptp);

}  // namespace sigmatree
