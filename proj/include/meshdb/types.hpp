#ifndef MESHDB_TYPES_HPP
#define MESHDB_TYPES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace meshdb {

// Identifiers are caller-supplied (mesh generators own the id space) and
// strictly positive within a mesh.
using VertexId = std::int64_t;
using ElemId = std::int64_t;

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Point3 operator+(Point3 a, Point3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Point3 operator-(Point3 a, Point3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Point3 operator*(double s, Point3 p) { return {s * p.x, s * p.y, s * p.z}; }

enum class Errc {
  duplicate_id,
  non_finite_coordinate,
  dangling_vertex,
  degenerate_element,
  duplicate_element,
  unknown_vertex,
  unknown_element,
  flat_box,
  incomplete_element,
  malformed_rank,
  representation_mismatch,
  invalid_partition_count,
  empty_mesh,
  graph_mesh_mismatch,
  stale_index,
  out_of_frame,
  not_found,
  ambiguous_inheritance,
  duplicate_binding,
  unknown_entity,
  parse_error,
  schema_mismatch,
  constraint_violation,
  duplicate_key,
  malformed_bundle,
  io_error,
  workspace_locked,
  usage,
};

const char* errc_name(Errc code);

// Single exception type for all operation failures; reporting operations
// (validate, load reports, divergence checks) return values instead.
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, std::string(errc_name(code)) + ": " + message);
}

}  // namespace meshdb

#endif
