#ifndef MESHDB_VIEWS_HPP
#define MESHDB_VIEWS_HPP

#include <cstddef>
#include <vector>

#include "meshdb/mesh.hpp"

namespace meshdb {

/// Quadruple rows to first-normal-form incidence rows: exactly four rows per
/// element, rank r carrying corner r, element order preserved.
std::vector<IncidenceRow> to_normalized(const std::vector<Tetrahedron>& elements);

/// Inverse transform. Every element id must cover ranks {0,1,2,3} exactly
/// once; throws incomplete_element or malformed_rank otherwise.
std::vector<Tetrahedron> to_quadruple(const std::vector<IncidenceRow>& rows);

// Elements whose corner set contains the vertex, ascending by id. Uses the
// normalized access path when the mesh materializes one, otherwise falls back
// to the quadruple-table scan. Throws unknown_vertex.
std::vector<ElemId> elements_sharing_vertex(VertexId vertex, const Mesh& m);

// Brute-force scan of the quadruple table; the oracle for the indexed path.
std::vector<ElemId> elements_sharing_vertex_scan(VertexId vertex, const Mesh& m);

// Element dual graph in CSR form. Nodes are element ids sorted ascending;
// two elements are adjacent iff they share a face (exactly 3 vertices).
struct ElementGraph {
  std::vector<ElemId> nodes;
  std::vector<std::size_t> xadj;       // size nodes.size() + 1
  std::vector<std::int32_t> adjncy;    // neighbor positions into nodes

  std::size_t node_count() const { return nodes.size(); }
  std::size_t edge_count() const { return adjncy.size() / 2; }
  std::size_t degree(std::size_t pos) const { return xadj[pos + 1] - xadj[pos]; }
};

ElementGraph element_adjacency_graph(const Mesh& m);

// Elements whose normalized rows disagree with the quadruple table. A
// non-empty report signals an internal bug (the representations are synced
// eagerly on every insert).
struct DivergenceReport {
  std::vector<ElemId> diverged;

  bool clean() const { return diverged.empty(); }
};

// Verifies the dual representations agree and repairs the normalized table
// from the quadruple table when they do not. No-op outside dual or
// normalized mode.
DivergenceReport sync_representations(Mesh& m);

}  // namespace meshdb

#endif
