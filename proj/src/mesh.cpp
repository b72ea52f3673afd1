#include "mifem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace mifem {

double StructuredMesh::triangle_area(int t) const
{
    const auto p = triangle_points(t);
    return signed_area(p[0], p[1], p[2]);
}

int StructuredMesh::locate(const Point2& p) const
{
    const int n = intervals_;
    const double sx = (p.x - domain_.xmin) / hx_;
    const double sy = (p.y - domain_.ymin) / hy_;
    const int i = std::clamp(static_cast<int>(std::floor(sx)), 0, n - 1);
    const int j = std::clamp(static_cast<int>(std::floor(sy)), 0, n - 1);
    const double xi = sx - i;
    const double eta = sy - j;
    return 2 * (j * n + i) + (xi >= eta ? 0 : 1);
}

StructuredMesh build_uniform_mesh(const Rectangle& domain, int n)
{
    if (n < 0 || n > 14) {
        throw std::invalid_argument("build_uniform_mesh: level must be in [0, 14]");
    }
    if (!(domain.width() > 0.0) || !(domain.height() > 0.0)) {
        throw std::invalid_argument("build_uniform_mesh: degenerate domain");
    }

    StructuredMesh m;
    m.domain_ = domain;
    m.level_ = n;
    const int N = 1 << n;
    m.intervals_ = N;
    m.hx_ = domain.width() / N;
    m.hy_ = domain.height() / N;

    const int nv1 = N + 1;
    m.vertices_.resize(static_cast<std::size_t>(nv1) * nv1);
    m.on_boundary_.assign(m.vertices_.size(), 0);
    for (int j = 0; j <= N; ++j) {
        for (int i = 0; i <= N; ++i) {
            const int v = j * nv1 + i;
            // endpoints hit the domain bounds exactly
            const double x = i == N ? domain.xmax : domain.xmin + i * m.hx_;
            const double y = j == N ? domain.ymax : domain.ymin + j * m.hy_;
            m.vertices_[v] = {x, y};
            m.on_boundary_[v] = (i == 0 || j == 0 || i == N || j == N) ? 1 : 0;
        }
    }

    m.triangles_.reserve(2 * static_cast<std::size_t>(N) * N);
    for (int j = 0; j < N; ++j) {
        for (int i = 0; i < N; ++i) {
            const int v00 = j * nv1 + i;
            const int v10 = v00 + 1;
            const int v01 = v00 + nv1;
            const int v11 = v01 + 1;
            m.triangles_.push_back({v00, v10, v11});
            m.triangles_.push_back({v00, v11, v01});
        }
    }

    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(3 * m.triangles_.size());
    for (const auto& tri : m.triangles_) {
        for (int k = 0; k < 3; ++k) {
            const int a = tri[k];
            const int b = tri[(k + 1) % 3];
            pairs.emplace_back(std::min(a, b), std::max(a, b));
        }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    m.edges_.resize(pairs.size());
    for (std::size_t e = 0; e < pairs.size(); ++e) {
        m.edges_[e].endpoints = {pairs[e].first, pairs[e].second};
        m.edges_[e].length = norm(m.vertices_[pairs[e].second] - m.vertices_[pairs[e].first]);
    }

    m.triangle_edges_.resize(m.triangles_.size());
    for (std::size_t t = 0; t < m.triangles_.size(); ++t) {
        const auto& tri = m.triangles_[t];
        for (int k = 0; k < 3; ++k) {
            const int a = tri[k];
            const int b = tri[(k + 1) % 3];
            const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
            const auto it = std::lower_bound(pairs.begin(), pairs.end(), key);
            const int e = static_cast<int>(it - pairs.begin());
            m.triangle_edges_[t][k] = e;

            Edge& edge = m.edges_[e];
            // triangles are visited in increasing order, so adjacent[0] is the lower index
            edge.adjacent[edge.num_adjacent++] = static_cast<int>(t);
            if (edge.num_adjacent == 1) {
                const Vec2 d = m.vertices_[b] - m.vertices_[a];
                edge.normal = (1.0 / norm(d)) * rotate_cw(d);
            }
        }
    }
    for (auto& edge : m.edges_) {
        edge.kind = edge.num_adjacent == 2 ? EdgeKind::interior : EdgeKind::boundary;
    }
    return m;
}

EdgePartition edge_partition(const StructuredMesh& mesh)
{
    EdgePartition part;
    const auto& edges = mesh.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        (edges[e].is_interior() ? part.interior : part.boundary).push_back(static_cast<int>(e));
    }
    return part;
}

} // namespace mifem
