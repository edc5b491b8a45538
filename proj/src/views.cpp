#include "meshdb/views.hpp"

#include <algorithm>
#include <unordered_map>

namespace meshdb {

std::vector<IncidenceRow> to_normalized(const std::vector<Tetrahedron>& elements) {
  std::vector<IncidenceRow> rows;
  rows.reserve(elements.size() * 4);
  for (const Tetrahedron& t : elements)
    for (std::uint8_t r = 0; r < 4; ++r)
      rows.push_back(IncidenceRow{t.id, r, t.corners[r]});
  return rows;
}

std::vector<Tetrahedron> to_quadruple(const std::vector<IncidenceRow>& rows) {
  struct Partial {
    std::array<VertexId, 4> corners{};
    unsigned rank_mask = 0;
  };
  std::unordered_map<ElemId, Partial> partial;
  partial.reserve(rows.size() / 4 + 1);
  std::vector<ElemId> order;  // first-appearance order

  for (const IncidenceRow& row : rows) {
    if (row.rank > 3)
      fail(Errc::malformed_rank, "element " + std::to_string(row.elem) + " has rank " +
                                     std::to_string(static_cast<int>(row.rank)));
    auto [it, inserted] = partial.try_emplace(row.elem);
    if (inserted) order.push_back(row.elem);
    Partial& p = it->second;
    const unsigned bit = 1u << row.rank;
    if (p.rank_mask & bit)
      fail(Errc::malformed_rank, "element " + std::to_string(row.elem) + " has rank " +
                                     std::to_string(static_cast<int>(row.rank)) + " twice");
    p.rank_mask |= bit;
    p.corners[row.rank] = row.vertex;
  }

  std::vector<Tetrahedron> elements;
  elements.reserve(order.size());
  for (ElemId id : order) {
    const Partial& p = partial.at(id);
    if (p.rank_mask != 0xF)
      fail(Errc::incomplete_element,
           "element " + std::to_string(id) + " is missing a rank");
    elements.push_back(Tetrahedron{id, p.corners});
  }
  return elements;
}

std::vector<ElemId> elements_sharing_vertex_scan(VertexId vertex, const Mesh& m) {
  if (!m.find_vertex(vertex))
    fail(Errc::unknown_vertex, "vertex " + std::to_string(vertex));
  std::vector<ElemId> result;
  for (const Tetrahedron& t : m.elements()) {
    if (t.corners[0] == vertex || t.corners[1] == vertex || t.corners[2] == vertex ||
        t.corners[3] == vertex)
      result.push_back(t.id);
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<ElemId> elements_sharing_vertex(VertexId vertex, const Mesh& m) {
  if (!m.find_vertex(vertex))
    fail(Errc::unknown_vertex, "vertex " + std::to_string(vertex));
  if (m.normalized_materialized()) {
    if (const std::vector<ElemId>* elems = m.normalized_elements_of(vertex))
      return *elems;
    return {};
  }
  return elements_sharing_vertex_scan(vertex, m);
}

namespace {

struct FaceKey {
  std::array<VertexId, 3> v;

  bool operator==(const FaceKey&) const = default;
};

struct FaceHash {
  std::size_t operator()(const FaceKey& f) const {
    std::size_t h = 1469598103934665603ull;
    for (VertexId x : f.v) {
      h ^= static_cast<std::size_t>(x);
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

ElementGraph element_adjacency_graph(const Mesh& m) {
  ElementGraph g;
  g.nodes.reserve(m.element_count());
  for (const Tetrahedron& t : m.elements()) g.nodes.push_back(t.id);
  std::sort(g.nodes.begin(), g.nodes.end());

  std::unordered_map<ElemId, std::int32_t> pos;
  pos.reserve(g.nodes.size());
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    pos.emplace(g.nodes[i], static_cast<std::int32_t>(i));

  // Each tet lists its 4 faces (sorted corner triples); elements meeting at a
  // face are adjacent. Distinct valid tets share at most one face.
  std::unordered_map<FaceKey, std::vector<std::int32_t>, FaceHash> face_elems;
  face_elems.reserve(m.element_count() * 4);
  for (const Tetrahedron& t : m.elements()) {
    const std::int32_t p = pos.at(t.id);
    for (int skip = 0; skip < 4; ++skip) {
      FaceKey f;
      int k = 0;
      for (int i = 0; i < 4; ++i)
        if (i != skip) f.v[k++] = t.corners[i];
      std::sort(f.v.begin(), f.v.end());
      face_elems[f].push_back(p);
    }
  }

  std::vector<std::vector<std::int32_t>> nbrs(g.nodes.size());
  for (const auto& [face, elems] : face_elems) {
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = i + 1; j < elems.size(); ++j) {
        if (elems[i] == elems[j]) continue;
        nbrs[elems[i]].push_back(elems[j]);
        nbrs[elems[j]].push_back(elems[i]);
      }
  }

  g.xadj.assign(g.nodes.size() + 1, 0);
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    auto& list = nbrs[i];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    g.xadj[i + 1] = g.xadj[i] + list.size();
  }
  g.adjncy.reserve(g.xadj.back());
  for (const auto& list : nbrs)
    g.adjncy.insert(g.adjncy.end(), list.begin(), list.end());
  return g;
}

DivergenceReport sync_representations(Mesh& m) {
  DivergenceReport report;
  if (m.policy().mode == RepresentationMode::quadruple_only) return report;
  if (!m.normalized_materialized()) {
    m.materialize_normalized();
    return report;
  }

  const std::vector<IncidenceRow> expected = to_normalized(m.elements());
  const std::vector<IncidenceRow>& actual = m.normalized();
  const std::size_t common = std::min(expected.size(), actual.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (!(expected[i] == actual[i])) {
      report.diverged.push_back(expected[i].elem);
      if (actual[i].elem != expected[i].elem)
        report.diverged.push_back(actual[i].elem);
    }
  }
  for (std::size_t i = common; i < expected.size(); ++i)
    report.diverged.push_back(expected[i].elem);
  for (std::size_t i = common; i < actual.size(); ++i)
    report.diverged.push_back(actual[i].elem);

  std::sort(report.diverged.begin(), report.diverged.end());
  report.diverged.erase(std::unique(report.diverged.begin(), report.diverged.end()),
                        report.diverged.end());
  if (!report.diverged.empty()) m.materialize_normalized();  // repair
  return report;
}

}  // namespace meshdb
