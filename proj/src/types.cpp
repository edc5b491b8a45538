#include "meshdb/types.hpp"

namespace meshdb {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::duplicate_id: return "duplicate-id";
    case Errc::non_finite_coordinate: return "non-finite-coordinate";
    case Errc::dangling_vertex: return "dangling-vertex";
    case Errc::degenerate_element: return "degenerate-element";
    case Errc::duplicate_element: return "duplicate-element";
    case Errc::unknown_vertex: return "unknown-vertex";
    case Errc::unknown_element: return "unknown-element";
    case Errc::flat_box: return "flat-box";
    case Errc::incomplete_element: return "incomplete-element";
    case Errc::malformed_rank: return "malformed-rank";
    case Errc::representation_mismatch: return "representation-mismatch";
    case Errc::invalid_partition_count: return "invalid-partition-count";
    case Errc::empty_mesh: return "empty-mesh";
    case Errc::graph_mesh_mismatch: return "graph-mesh-mismatch";
    case Errc::stale_index: return "stale-index";
    case Errc::out_of_frame: return "out-of-frame";
    case Errc::not_found: return "not-found";
    case Errc::ambiguous_inheritance: return "ambiguous-inheritance";
    case Errc::duplicate_binding: return "duplicate-name-on-entity";
    case Errc::unknown_entity: return "unknown-entity";
    case Errc::parse_error: return "parse-error";
    case Errc::schema_mismatch: return "schema-mismatch";
    case Errc::constraint_violation: return "constraint-violation";
    case Errc::duplicate_key: return "duplicate-key";
    case Errc::malformed_bundle: return "malformed-bundle";
    case Errc::io_error: return "io-error";
    case Errc::workspace_locked: return "workspace-locked";
    case Errc::usage: return "usage";
  }
  return "unknown";
}

}  // namespace meshdb
