#ifndef MESHDB_SPATIAL_HPP
#define MESHDB_SPATIAL_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "meshdb/mesh.hpp"

namespace meshdb {

// One bounding-box cell per element. The parallel kernel is the default;
// the serial lane is the reference used by tests and the benchmark.
std::vector<Cell> build_cell_table(const Mesh& m);
std::vector<Cell> build_cell_table_serial(const Mesh& m);

// Full-table scan: every cell whose box contains p, bounds inclusive on all
// three axes. Ascending by id.
std::vector<ElemId> point_in_box_scan(Point3 p, const std::vector<Cell>& cells);
std::vector<ElemId> point_in_box_scan_serial(Point3 p, const std::vector<Cell>& cells);

// Composite interval index over (x_min, x_max, y_min, y_max), kept in one
// lexicographic ordering. A lookup seeks the x_min <= @x prefix, filters the
// residual bounds, and finishes with a bookmark lookup into the cell table
// for the z bounds.
class IntervalIndex {
 public:
  static IntervalIndex build(const std::vector<Cell>& cells);

  // Exactly the scan result. Throws stale_index when the cell table changed
  // cardinality since the build.
  std::vector<ElemId> lookup(Point3 p, const std::vector<Cell>& cells) const;

  std::size_t size() const { return entries_.size(); }

 private:
  struct Entry {
    double x_min, x_max, y_min, y_max;
    std::uint32_t cell;  // position in the cell table
  };
  std::vector<Entry> entries_;
};

inline std::vector<ElemId> point_in_box_indexed(Point3 p, const IntervalIndex& idx,
                                                const std::vector<Cell>& cells) {
  return idx.lookup(p, cells);
}

// Quantization frame for space-filling-curve keys: the mesh bounding box
// expanded by one grid cell per side so boundary points stay in frame.
struct MortonGrid {
  Point3 lo, hi;
  int bits = 10;  // per axis, <= 21

  static MortonGrid from_bounds(Point3 lo, Point3 hi, int bits = 10);
  static MortonGrid from_mesh(const Mesh& m, int bits = 10);

  std::uint32_t cells_per_axis() const { return 1u << bits; }

  // Grid cell indices of p; throws out_of_frame.
  std::array<std::uint32_t, 3> quantize(Point3 p) const;
};

struct MortonKey {
  std::uint64_t code = 0;
  int bits = 10;

  bool operator==(const MortonKey&) const = default;
};

// Bit interleaving: x bit i lands at position 3i, y at 3i+1, z at 3i+2.
// The shipped version dilates with magic masks; the serial reference builds
// the code bit by bit.
std::uint64_t morton_interleave(std::uint32_t ix, std::uint32_t iy, std::uint32_t iz);
std::uint64_t morton_interleave_serial(std::uint32_t ix, std::uint32_t iy,
                                       std::uint32_t iz, int bits);
std::array<std::uint32_t, 3> morton_deinterleave(std::uint64_t code);

MortonKey morton_encode(Point3 p, const MortonGrid& grid);
std::array<std::uint32_t, 3> morton_decode(MortonKey key);

std::vector<std::uint64_t> morton_encode_batch(const std::vector<Point3>& points,
                                               const MortonGrid& grid);
std::vector<std::uint64_t> morton_encode_batch_serial(const std::vector<Point3>& points,
                                                      const MortonGrid& grid);

struct BarycentricCoords {
  std::array<double, 4> lambda{};

  double sum() const { return lambda[0] + lambda[1] + lambda[2] + lambda[3]; }

  // Boundary-robust inside test; eps is the acceptance slack below zero.
  bool inside(double eps = 1e-12) const {
    return lambda[0] >= -eps && lambda[1] >= -eps && lambda[2] >= -eps &&
           lambda[3] >= -eps;
  }
};

/// Coefficients expressing p as an affine combination of the corners,
/// computed as ratios of signed volumes. Throws degenerate_element when the
/// element volume is within the coplanarity tolerance.
BarycentricCoords barycentric(Point3 p, const Tetrahedron& t, const Mesh& m);

// Coarse filter through the interval index, exact refinement through the
// barycentric test. Boundary points may land in several elements.
std::vector<ElemId> point_locate(Point3 p, const Mesh& m, const IntervalIndex& idx,
                                 const std::vector<Cell>& cells);

std::vector<std::vector<ElemId>> point_locate_batch(const std::vector<Point3>& points,
                                                    const Mesh& m,
                                                    const IntervalIndex& idx,
                                                    const std::vector<Cell>& cells);
std::vector<std::vector<ElemId>> point_locate_batch_serial(
    const std::vector<Point3>& points, const Mesh& m, const IntervalIndex& idx,
    const std::vector<Cell>& cells);

}  // namespace meshdb

#endif
