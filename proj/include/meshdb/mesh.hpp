#ifndef MESHDB_MESH_HPP
#define MESHDB_MESH_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "meshdb/types.hpp"

namespace meshdb {

struct Vertex {
  VertexId id = 0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Point3 point() const { return {x, y, z}; }
};

// A tetrahedron is a quadruple of vertex ids; the corner order defines its
// orientation (even permutations preserve it).
struct Tetrahedron {
  ElemId id = 0;
  std::array<VertexId, 4> corners{};

  bool operator==(const Tetrahedron&) const = default;
};

// Sorted corner set plus the permutation parity from the stored corner order
// to sorted order. The sorted quadruple identifies an element independent of
// corner ordering; the parity keeps the orientation recoverable.
struct CanonicalKey {
  std::array<VertexId, 4> sorted{};
  int parity = +1;  // +1 even, -1 odd
};

// Axis-aligned bounding box row of the Cells table. Non-degenerate by
// construction: min strictly below max on every axis.
struct Cell {
  ElemId id = 0;
  double x_min = 0.0, y_min = 0.0, z_min = 0.0;
  double x_max = 0.0, y_max = 0.0, z_max = 0.0;

  // Inclusive on all bounds, matching BETWEEN semantics.
  bool contains(Point3 p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max &&
           p.z >= z_min && p.z <= z_max;
  }
};

// First-normal-form row of the element table: one row per (element, corner
// position). Rank preserves corner order, so orientation survives the
// normalized representation.
struct IncidenceRow {
  ElemId elem = 0;
  std::uint8_t rank = 0;  // corner position, < 4
  VertexId vertex = 0;

  bool operator==(const IncidenceRow&) const = default;
};

enum class RepresentationMode { quadruple_only, normalized_only, dual };

struct RepresentationPolicy {
  RepresentationMode mode = RepresentationMode::quadruple_only;
  // Element count above which dual storage is mandated at load/creation time.
  std::size_t dual_threshold = 100000;
};

enum class ViolationKind {
  dangling_vertex,
  duplicate_canonical_key,
  repeated_corner,
  non_finite_coordinate,
  duplicate_vertex_id,
  duplicate_elem_id,
  geometric_degeneracy,
};

const char* violation_kind_name(ViolationKind kind);

struct Violation {
  ViolationKind kind{};
  ElemId elem = 0;      // offending element, 0 if not element-scoped
  VertexId vertex = 0;  // offending vertex, 0 if not vertex-scoped
  // Storage index of the offending row in its table. Bulk loads translate
  // this into a file line number.
  std::size_t where = 0;
  bool element_scoped = false;
  std::string detail;

  bool operator==(const Violation&) const = default;
};

// Errors break mesh invariants; warnings flag geometric hazards (coplanar
// elements) the combinatorial constraints cannot see.
struct ValidationReport {
  std::vector<Violation> errors;
  std::vector<Violation> warnings;

  bool clean() const { return errors.empty(); }
};

struct QuadrupleHash {
  std::size_t operator()(const std::array<VertexId, 4>& q) const {
    std::size_t h = 1469598103934665603ull;
    for (VertexId v : q) {
      h ^= static_cast<std::size_t>(v);
      h *= 1099511628211ull;
    }
    return h;
  }
};

/// Sorts the corners and records the permutation parity.
/// Throws degenerate_element when two corners coincide.
CanonicalKey canonicalize(const std::array<VertexId, 4>& corners);

/// One sixth of the scalar triple product of the edge vectors from a.
/// Antisymmetric under corner transposition; zero iff coplanar.
double signed_volume(Point3 a, Point3 b, Point3 c, Point3 d);

// Coplanarity threshold: volumes below 1e-12 * diagonal^3 of the corner
// bounding box count as geometrically degenerate.
double degeneracy_tolerance(Point3 lo, Point3 hi);

class Mesh {
 public:
  // Checked inserts: enforce the table constraints at insert time.
  void add_vertex(const Vertex& v);
  void add_tetrahedron(ElemId id, const std::array<VertexId, 4>& corners);

  // Raw appends for bulk loads: rows land unchecked, validate_mesh reports
  // violations afterwards. rebuild_indexes() must run once the load is done.
  void append_vertex_raw(const Vertex& v);
  void append_element_raw(const Tetrahedron& t);
  void rebuild_indexes();

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Tetrahedron>& elements() const { return elements_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t element_count() const { return elements_.size(); }

  const Vertex* find_vertex(VertexId id) const;
  const Tetrahedron* find_element(ElemId id) const;
  const Vertex& vertex_at(VertexId id) const;      // throws unknown_vertex
  const Tetrahedron& element_at(ElemId id) const;  // throws unknown_element

  Point3 element_centroid(const Tetrahedron& t) const;

  // Global bounding box over all vertices; throws empty_mesh when empty.
  void global_bounds(Point3& lo, Point3& hi) const;

  const RepresentationPolicy& policy() const { return policy_; }
  void set_policy(RepresentationPolicy p);

  // Applies the dual-storage threshold to the current element count, as done
  // at load/creation time (the mode does not switch mid-session).
  void apply_policy_threshold();

  bool normalized_materialized() const { return normalized_materialized_; }
  const std::vector<IncidenceRow>& normalized() const { return normalized_; }
  std::vector<IncidenceRow>& mutable_normalized() { return normalized_; }
  void materialize_normalized();
  void drop_normalized();

  // Access path over the normalized table: vertex id to the elements whose
  // row set contains it.
  const std::vector<ElemId>* normalized_elements_of(VertexId v) const;
  void rebuild_normalized_index();

 private:
  void eager_sync_insert(const Tetrahedron& t);

  std::vector<Vertex> vertices_;
  std::vector<Tetrahedron> elements_;
  std::unordered_map<VertexId, std::size_t> vertex_index_;  // first occurrence
  std::unordered_map<ElemId, std::size_t> elem_index_;      // first occurrence
  std::unordered_map<std::array<VertexId, 4>, ElemId, QuadrupleHash> canonical_;

  RepresentationPolicy policy_;
  bool normalized_materialized_ = false;
  std::vector<IncidenceRow> normalized_;
  std::unordered_map<VertexId, std::vector<ElemId>> normalized_index_;
};

double signed_volume(const Tetrahedron& t, const Mesh& m);

/// Per-axis min/max over the four corners. Throws flat_box when the element
/// collapses to a plane parallel to an axis (min == max on that axis).
Cell bounding_box(const Tetrahedron& t, const Mesh& m);

// Full constraint sweep: foreign keys, repeated corners, permuted duplicates
// (canonical key), non-finite coordinates, duplicate ids. Geometric
// degeneracy lands in warnings. The parallel kernel and the serial reference
// produce identical reports.
ValidationReport validate_mesh(const Mesh& m);
ValidationReport validate_mesh_serial(const Mesh& m);

}  // namespace meshdb

#endif
