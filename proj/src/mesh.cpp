#include "meshdb/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace meshdb {

const char* violation_kind_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::dangling_vertex: return "dangling-vertex";
    case ViolationKind::duplicate_canonical_key: return "duplicate-canonical-key";
    case ViolationKind::repeated_corner: return "repeated-corner";
    case ViolationKind::non_finite_coordinate: return "non-finite-coordinate";
    case ViolationKind::duplicate_vertex_id: return "duplicate-vertex-id";
    case ViolationKind::duplicate_elem_id: return "duplicate-elem-id";
    case ViolationKind::geometric_degeneracy: return "geometric-degeneracy";
  }
  return "unknown";
}

CanonicalKey canonicalize(const std::array<VertexId, 4>& corners) {
  int inversions = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (corners[i] == corners[j])
        fail(Errc::degenerate_element,
             "corner " + std::to_string(corners[i]) + " repeated");
      if (corners[i] > corners[j]) ++inversions;
    }
  }
  CanonicalKey key;
  key.sorted = corners;
  std::sort(key.sorted.begin(), key.sorted.end());
  key.parity = (inversions % 2 == 0) ? +1 : -1;
  return key;
}

double signed_volume(Point3 a, Point3 b, Point3 c, Point3 d) {
  const Point3 u = b - a;
  const Point3 v = c - a;
  const Point3 w = d - a;
  const double det = u.x * (v.y * w.z - v.z * w.y) -
                     u.y * (v.x * w.z - v.z * w.x) +
                     u.z * (v.x * w.y - v.y * w.x);
  return det / 6.0;
}

double degeneracy_tolerance(Point3 lo, Point3 hi) {
  const Point3 d = hi - lo;
  const double diag = std::sqrt(d.x * d.x + d.y * d.y + d.z * d.z);
  return 1e-12 * diag * diag * diag;
}

void Mesh::add_vertex(const Vertex& v) {
  if (v.id <= 0) fail(Errc::usage, "vertex id must be positive");
  if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z))
    fail(Errc::non_finite_coordinate,
         "vertex " + std::to_string(v.id) + " has a non-finite coordinate");
  if (vertex_index_.count(v.id))
    fail(Errc::duplicate_id, "vertex " + std::to_string(v.id) + " already present");
  vertex_index_.emplace(v.id, vertices_.size());
  vertices_.push_back(v);
}

void Mesh::add_tetrahedron(ElemId id, const std::array<VertexId, 4>& corners) {
  if (id <= 0) fail(Errc::usage, "element id must be positive");
  if (elem_index_.count(id))
    fail(Errc::duplicate_id, "element " + std::to_string(id) + " already present");
  for (VertexId c : corners) {
    if (!vertex_index_.count(c))
      fail(Errc::dangling_vertex, "element " + std::to_string(id) +
                                      " references missing vertex " + std::to_string(c));
  }
  const CanonicalKey key = canonicalize(corners);  // throws degenerate_element
  auto it = canonical_.find(key.sorted);
  if (it != canonical_.end())
    fail(Errc::duplicate_element,
         "element " + std::to_string(id) + " has the same corner set as element " +
             std::to_string(it->second));
  canonical_.emplace(key.sorted, id);
  elem_index_.emplace(id, elements_.size());
  elements_.push_back(Tetrahedron{id, corners});
  if (normalized_materialized_) eager_sync_insert(elements_.back());
}

void Mesh::append_vertex_raw(const Vertex& v) {
  vertex_index_.emplace(v.id, vertices_.size());  // keeps the first occurrence
  vertices_.push_back(v);
}

void Mesh::append_element_raw(const Tetrahedron& t) {
  elem_index_.emplace(t.id, elements_.size());
  elements_.push_back(t);
  bool distinct = true;
  for (int i = 0; i < 4 && distinct; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (t.corners[i] == t.corners[j]) { distinct = false; break; }
  if (distinct) {
    auto sorted = t.corners;
    std::sort(sorted.begin(), sorted.end());
    canonical_.emplace(sorted, t.id);
  }
  if (normalized_materialized_) eager_sync_insert(t);
}

void Mesh::rebuild_indexes() {
  vertex_index_.clear();
  elem_index_.clear();
  canonical_.clear();
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    vertex_index_.emplace(vertices_[i].id, i);
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const Tetrahedron& t = elements_[i];
    elem_index_.emplace(t.id, i);
    bool distinct = true;
    for (int a = 0; a < 4 && distinct; ++a)
      for (int b = a + 1; b < 4; ++b)
        if (t.corners[a] == t.corners[b]) { distinct = false; break; }
    if (distinct) {
      auto sorted = t.corners;
      std::sort(sorted.begin(), sorted.end());
      canonical_.emplace(sorted, t.id);
    }
  }
  if (normalized_materialized_) materialize_normalized();
}

const Vertex* Mesh::find_vertex(VertexId id) const {
  auto it = vertex_index_.find(id);
  return it == vertex_index_.end() ? nullptr : &vertices_[it->second];
}

const Tetrahedron* Mesh::find_element(ElemId id) const {
  auto it = elem_index_.find(id);
  return it == elem_index_.end() ? nullptr : &elements_[it->second];
}

const Vertex& Mesh::vertex_at(VertexId id) const {
  const Vertex* v = find_vertex(id);
  if (!v) fail(Errc::unknown_vertex, "vertex " + std::to_string(id));
  return *v;
}

const Tetrahedron& Mesh::element_at(ElemId id) const {
  const Tetrahedron* t = find_element(id);
  if (!t) fail(Errc::unknown_element, "element " + std::to_string(id));
  return *t;
}

Point3 Mesh::element_centroid(const Tetrahedron& t) const {
  Point3 c;
  for (VertexId v : t.corners) {
    const Vertex& p = vertex_at(v);
    c.x += p.x;
    c.y += p.y;
    c.z += p.z;
  }
  return 0.25 * c;
}

void Mesh::global_bounds(Point3& lo, Point3& hi) const {
  if (vertices_.empty()) fail(Errc::empty_mesh, "no vertices");
  lo = hi = vertices_.front().point();
  for (const Vertex& v : vertices_) {
    lo.x = std::min(lo.x, v.x);
    lo.y = std::min(lo.y, v.y);
    lo.z = std::min(lo.z, v.z);
    hi.x = std::max(hi.x, v.x);
    hi.y = std::max(hi.y, v.y);
    hi.z = std::max(hi.z, v.z);
  }
}

void Mesh::set_policy(RepresentationPolicy p) {
  policy_ = p;
  if (policy_.mode == RepresentationMode::quadruple_only)
    drop_normalized();
  else
    materialize_normalized();
}

void Mesh::apply_policy_threshold() {
  if (policy_.mode == RepresentationMode::quadruple_only &&
      elements_.size() >= policy_.dual_threshold) {
    policy_.mode = RepresentationMode::dual;
    materialize_normalized();
  }
}

void Mesh::materialize_normalized() {
  normalized_.clear();
  normalized_.reserve(elements_.size() * 4);
  for (const Tetrahedron& t : elements_)
    for (std::uint8_t r = 0; r < 4; ++r)
      normalized_.push_back(IncidenceRow{t.id, r, t.corners[r]});
  normalized_materialized_ = true;
  rebuild_normalized_index();
}

void Mesh::drop_normalized() {
  normalized_.clear();
  normalized_index_.clear();
  normalized_materialized_ = false;
}

const std::vector<ElemId>* Mesh::normalized_elements_of(VertexId v) const {
  auto it = normalized_index_.find(v);
  return it == normalized_index_.end() ? nullptr : &it->second;
}

void Mesh::rebuild_normalized_index() {
  normalized_index_.clear();
  for (const IncidenceRow& row : normalized_) {
    auto& elems = normalized_index_[row.vertex];
    if (elems.empty() || elems.back() != row.elem) elems.push_back(row.elem);
  }
  for (auto& [v, elems] : normalized_index_) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  }
}

void Mesh::eager_sync_insert(const Tetrahedron& t) {
  for (std::uint8_t r = 0; r < 4; ++r)
    normalized_.push_back(IncidenceRow{t.id, r, t.corners[r]});
  for (VertexId v : t.corners) {
    auto& elems = normalized_index_[v];
    auto pos = std::lower_bound(elems.begin(), elems.end(), t.id);
    if (pos == elems.end() || *pos != t.id) elems.insert(pos, t.id);
  }
}

double signed_volume(const Tetrahedron& t, const Mesh& m) {
  Point3 p[4];
  for (int i = 0; i < 4; ++i) {
    const Vertex* v = m.find_vertex(t.corners[i]);
    if (!v)
      fail(Errc::dangling_vertex, "element " + std::to_string(t.id) +
                                      " references missing vertex " +
                                      std::to_string(t.corners[i]));
    p[i] = v->point();
  }
  return signed_volume(p[0], p[1], p[2], p[3]);
}

Cell bounding_box(const Tetrahedron& t, const Mesh& m) {
  Point3 lo{0, 0, 0}, hi{0, 0, 0};
  for (int i = 0; i < 4; ++i) {
    const Vertex* v = m.find_vertex(t.corners[i]);
    if (!v)
      fail(Errc::dangling_vertex, "element " + std::to_string(t.id) +
                                      " references missing vertex " +
                                      std::to_string(t.corners[i]));
    const Point3 p = v->point();
    if (i == 0) {
      lo = hi = p;
    } else {
      lo.x = std::min(lo.x, p.x);
      lo.y = std::min(lo.y, p.y);
      lo.z = std::min(lo.z, p.z);
      hi.x = std::max(hi.x, p.x);
      hi.y = std::max(hi.y, p.y);
      hi.z = std::max(hi.z, p.z);
    }
  }
  if (!(lo.x < hi.x) || !(lo.y < hi.y) || !(lo.z < hi.z))
    fail(Errc::flat_box,
         "element " + std::to_string(t.id) + " is flat on at least one axis");
  return Cell{t.id, lo.x, lo.y, lo.z, hi.x, hi.y, hi.z};
}

namespace {

struct ElementSlot {
  std::vector<Violation> errors;
  std::vector<Violation> warnings;
};

// All per-element checks for element index i. first_canonical maps a sorted
// corner quadruple to the storage index of its first element.
void check_element(
    const Mesh& m, std::size_t i,
    const std::unordered_map<ElemId, std::size_t>& first_elem,
    const std::unordered_map<std::array<VertexId, 4>, std::size_t, QuadrupleHash>&
        first_canonical,
    ElementSlot& slot) {
  const Tetrahedron& t = m.elements()[i];

  if (auto it = first_elem.find(t.id); it != first_elem.end() && it->second != i) {
    Violation v;
    v.kind = ViolationKind::duplicate_elem_id;
    v.elem = t.id;
    v.where = i;
    v.element_scoped = true;
    v.detail = "element id also used at row index " + std::to_string(it->second);
    slot.errors.push_back(std::move(v));
  }

  bool all_resolve = true;
  std::string missing;
  for (VertexId c : t.corners) {
    if (!m.find_vertex(c)) {
      all_resolve = false;
      if (!missing.empty()) missing += ", ";
      missing += std::to_string(c);
    }
  }
  if (!all_resolve) {
    Violation v;
    v.kind = ViolationKind::dangling_vertex;
    v.elem = t.id;
    v.where = i;
    v.element_scoped = true;
    v.detail = "references missing vertex " + missing;
    slot.errors.push_back(std::move(v));
  }

  bool distinct = true;
  for (int a = 0; a < 4 && distinct; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (t.corners[a] == t.corners[b]) { distinct = false; break; }
  if (!distinct) {
    Violation v;
    v.kind = ViolationKind::repeated_corner;
    v.elem = t.id;
    v.where = i;
    v.element_scoped = true;
    v.detail = "corner vertex repeated";
    slot.errors.push_back(std::move(v));
    return;  // canonical key and volume undefined
  }

  auto sorted = t.corners;
  std::sort(sorted.begin(), sorted.end());
  if (auto it = first_canonical.find(sorted); it != first_canonical.end() && it->second != i) {
    Violation v;
    v.kind = ViolationKind::duplicate_canonical_key;
    v.elem = t.id;
    v.where = i;
    v.element_scoped = true;
    v.detail = "same corner set as element " + std::to_string(m.elements()[it->second].id);
    slot.errors.push_back(std::move(v));
  }

  if (all_resolve) {
    Point3 p[4];
    bool finite = true;
    for (int k = 0; k < 4; ++k) {
      p[k] = m.vertex_at(t.corners[k]).point();
      finite = finite && std::isfinite(p[k].x) && std::isfinite(p[k].y) &&
               std::isfinite(p[k].z);
    }
    if (finite) {
      Point3 lo = p[0], hi = p[0];
      for (int k = 1; k < 4; ++k) {
        lo.x = std::min(lo.x, p[k].x); hi.x = std::max(hi.x, p[k].x);
        lo.y = std::min(lo.y, p[k].y); hi.y = std::max(hi.y, p[k].y);
        lo.z = std::min(lo.z, p[k].z); hi.z = std::max(hi.z, p[k].z);
      }
      const double vol = signed_volume(p[0], p[1], p[2], p[3]);
      if (std::abs(vol) <= degeneracy_tolerance(lo, hi)) {
        Violation v;
        v.kind = ViolationKind::geometric_degeneracy;
        v.elem = t.id;
        v.where = i;
        v.element_scoped = true;
        v.detail = "signed volume within coplanarity tolerance";
        slot.warnings.push_back(std::move(v));
      }
    }
  }
}

ValidationReport validate_impl(const Mesh& m, bool parallel) {
  ValidationReport report;

  // Vertex table sweep, storage order.
  std::unordered_map<VertexId, std::size_t> first_vertex;
  first_vertex.reserve(m.vertex_count());
  for (std::size_t i = 0; i < m.vertices().size(); ++i) {
    const Vertex& v = m.vertices()[i];
    auto [it, inserted] = first_vertex.emplace(v.id, i);
    if (!inserted) {
      Violation viol;
      viol.kind = ViolationKind::duplicate_vertex_id;
      viol.vertex = v.id;
      viol.where = i;
      viol.detail = "vertex id also used at row index " + std::to_string(it->second);
      report.errors.push_back(std::move(viol));
    }
    if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z)) {
      Violation viol;
      viol.kind = ViolationKind::non_finite_coordinate;
      viol.vertex = v.id;
      viol.where = i;
      viol.detail = "coordinate is NaN or infinite";
      report.errors.push_back(std::move(viol));
    }
  }

  std::unordered_map<ElemId, std::size_t> first_elem;
  first_elem.reserve(m.element_count());
  std::unordered_map<std::array<VertexId, 4>, std::size_t, QuadrupleHash> first_canonical;
  first_canonical.reserve(m.element_count());
  for (std::size_t i = 0; i < m.elements().size(); ++i) {
    const Tetrahedron& t = m.elements()[i];
    first_elem.emplace(t.id, i);
    bool distinct = true;
    for (int a = 0; a < 4 && distinct; ++a)
      for (int b = a + 1; b < 4; ++b)
        if (t.corners[a] == t.corners[b]) { distinct = false; break; }
    if (distinct) {
      auto sorted = t.corners;
      std::sort(sorted.begin(), sorted.end());
      first_canonical.emplace(sorted, i);
    }
  }

  const std::size_t n = m.element_count();
  std::vector<ElementSlot> slots(n);
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      check_element(m, static_cast<std::size_t>(i), first_elem, first_canonical,
                    slots[static_cast<std::size_t>(i)]);
  } else {
    for (std::size_t i = 0; i < n; ++i)
      check_element(m, i, first_elem, first_canonical, slots[i]);
  }

  for (ElementSlot& slot : slots) {
    for (Violation& v : slot.errors) report.errors.push_back(std::move(v));
    for (Violation& v : slot.warnings) report.warnings.push_back(std::move(v));
  }
  return report;
}

}  // namespace

ValidationReport validate_mesh(const Mesh& m) { return validate_impl(m, true); }

ValidationReport validate_mesh_serial(const Mesh& m) { return validate_impl(m, false); }

}  // namespace meshdb
