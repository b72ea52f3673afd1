#pragma once

#include "mifem/geometry.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mifem {

struct Rectangle {
    double xmin = -1.0;
    double xmax = 1.0;
    double ymin = -1.0;
    double ymax = 1.0;

    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    double area() const { return width() * height(); }
};

enum class EdgeKind : std::uint8_t { interior, boundary };

struct Edge {
    std::array<int, 2> endpoints{};   // sorted: endpoints[0] < endpoints[1]
    std::array<int, 2> adjacent{-1, -1};
    int num_adjacent = 0;
    Vec2 normal;                      // unit, outward from adjacent[0]
    double length = 0.0;
    EdgeKind kind = EdgeKind::boundary;

    bool is_interior() const { return kind == EdgeKind::interior; }
};

/// Uniform right-triangle mesh on a rectangle: 2^n x 2^n squares, each cut
/// along its bottom-left to top-right diagonal.
///
/// Vertices are numbered row-major (x fastest). Square (i,j) yields triangles
/// 2*(j*N+i) = {v00, v10, v11} and 2*(j*N+i)+1 = {v00, v11, v01}, both
/// counterclockwise. Edges are numbered by their sorted endpoint pairs.
/// Local edge k of a triangle joins its local vertices k and (k+1)%3.
class StructuredMesh {
public:
    StructuredMesh() = default;

    const Rectangle& domain() const { return domain_; }
    int level() const { return level_; }
    int intervals() const { return intervals_; }
    double hx() const { return hx_; }
    double hy() const { return hy_; }
    double h() const { return hx_ > hy_ ? hx_ : hy_; }

    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_triangles() const { return triangles_.size(); }
    std::size_t num_edges() const { return edges_.size(); }

    const std::vector<Point2>& vertices() const { return vertices_; }
    const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::uint8_t>& vertex_boundary_flags() const { return on_boundary_; }

    const Point2& vertex(int v) const { return vertices_[v]; }
    const std::array<int, 3>& triangle(int t) const { return triangles_[t]; }
    const Edge& edge(int e) const { return edges_[e]; }
    bool is_boundary_vertex(int v) const { return on_boundary_[v] != 0; }

    /// Global edge index of local edge k (vertices k, k+1) of triangle t.
    int triangle_edge(int t, int k) const { return triangle_edges_[t][k]; }
    const std::array<int, 3>& triangle_edges(int t) const { return triangle_edges_[t]; }

    std::array<Point2, 3> triangle_points(int t) const
    {
        const auto& tri = triangles_[t];
        return {vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]};
    }
    double triangle_area(int t) const;

    /// Triangle containing p (closed), located from the structured layout.
    int locate(const Point2& p) const;

    friend StructuredMesh build_uniform_mesh(const Rectangle& domain, int n);

private:
    Rectangle domain_;
    int level_ = 0;
    int intervals_ = 1;
    double hx_ = 0.0;
    double hy_ = 0.0;
    std::vector<Point2> vertices_;
    std::vector<std::uint8_t> on_boundary_;
    std::vector<std::array<int, 3>> triangles_;
    std::vector<std::array<int, 3>> triangle_edges_;
    std::vector<Edge> edges_;
};

StructuredMesh build_uniform_mesh(const Rectangle& domain, int n);

struct EdgePartition {
    std::vector<int> interior;
    std::vector<int> boundary;
};

EdgePartition edge_partition(const StructuredMesh& mesh);

} // namespace mifem
