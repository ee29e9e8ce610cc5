#include "idcp/surface.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace idcp {

namespace {

std::string face_str(const std::array<int, 3>& f) {
  return "{" + std::to_string(f[0]) + ", " + std::to_string(f[1]) + ", " + std::to_string(f[2]) + "}";
}

std::string edge_str(const Edge& e) {
  return "{" + std::to_string(e.a) + ", " + std::to_string(e.b) + "}";
}

}  // namespace

TriangulatedSurface::TriangulatedSurface(int vertex_count,
                                         const std::vector<std::array<int, 3>>& face_triples)
    : vertex_count_(vertex_count) {
  if (vertex_count < 1) fail(errc::invalid_face, "vertex count must be positive");

  faces_.reserve(face_triples.size());
  for (const auto& triple : face_triples) {
    Face f{triple};
    std::sort(f.v.begin(), f.v.end());
    if (f.v[0] < 1 || f.v[2] > vertex_count)
      fail(errc::invalid_face, "face " + face_str(triple) + " references a vertex outside 1.." +
                                   std::to_string(vertex_count));
    if (f.v[0] == f.v[1] || f.v[1] == f.v[2])
      fail(errc::invalid_face, "face " + face_str(triple) + " repeats a vertex");
    faces_.push_back(f);
  }

  {
    auto sorted = faces_;
    std::sort(sorted.begin(), sorted.end(),
              [](const Face& x, const Face& y) { return x.v < y.v; });
    auto dup = std::adjacent_find(sorted.begin(), sorted.end(),
                                  [](const Face& x, const Face& y) { return x.v == y.v; });
    if (dup != sorted.end()) fail(errc::duplicate_face, "face " + face_str(dup->v) + " listed twice");
  }

  // Collect edges and their incident faces; a closed surface has exactly two
  // faces per edge.
  std::map<Edge, std::vector<int>> incident;
  for (int fi = 0; fi < static_cast<int>(faces_.size()); ++fi) {
    const auto& v = faces_[fi].v;
    incident[Edge{v[0], v[1]}].push_back(fi);
    incident[Edge{v[0], v[2]}].push_back(fi);
    incident[Edge{v[1], v[2]}].push_back(fi);
  }
  edges_.reserve(incident.size());
  edge_faces_.reserve(incident.size());
  for (const auto& [edge, fis] : incident) {
    if (fis.size() != 2)
      fail(errc::non_manifold_edge, "edge " + edge_str(edge) + " lies in " +
                                        std::to_string(fis.size()) + " faces, expected 2");
    edges_.push_back(edge);
    edge_faces_.push_back({fis[0], fis[1]});
  }

  vertex_faces_.assign(vertex_count_, {});
  for (int fi = 0; fi < static_cast<int>(faces_.size()); ++fi)
    for (int v : faces_[fi].v) vertex_faces_[v - 1].push_back(fi);
  for (int v = 1; v <= vertex_count_; ++v)
    if (vertex_faces_[v - 1].empty())
      fail(errc::dangling_vertex, "vertex " + std::to_string(v) + " lies in no face");
}

int TriangulatedSurface::edge_index(int a, int b) const {
  if (a > b) std::swap(a, b);
  Edge key{a, b};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || !(*it == key))
    fail(errc::invalid_face, "no edge " + edge_str(key) + " in the surface");
  return static_cast<int>(it - edges_.begin());
}

const std::vector<int>& TriangulatedSurface::faces_at(int vertex) const {
  if (vertex < 1 || vertex > vertex_count_)
    fail(errc::invalid_face, "vertex " + std::to_string(vertex) + " out of range");
  return vertex_faces_[vertex - 1];
}

int TriangulatedSurface::euler_characteristic() const {
  return vertex_count_ - static_cast<int>(edges_.size()) + static_cast<int>(faces_.size());
}

VertexSubset::VertexSubset(const TriangulatedSurface& surface, std::vector<int> members)
    : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && (members_.front() < 1 || members_.back() > surface.vertex_count()))
    fail(errc::invalid_face, "subset references a vertex outside 1.." +
                                 std::to_string(surface.vertex_count()));
  if (members_.empty() || static_cast<int>(members_.size()) == surface.vertex_count())
    fail(errc::empty_or_full_subset, "subset must be nonempty and proper");
}

bool VertexSubset::contains(int vertex) const {
  return std::binary_search(members_.begin(), members_.end(), vertex);
}

std::vector<LinkPair> link_pairs(const TriangulatedSurface& surface, const VertexSubset& subset) {
  std::vector<LinkPair> pairs;
  for (const Face& f : surface.faces()) {
    int inside = -1, count = 0;
    for (int v : f.v)
      if (subset.contains(v)) {
        inside = v;
        ++count;
      }
    if (count != 1) continue;
    Edge opposite;
    for (int v : f.v)
      if (v != inside) (opposite.a == 0 ? opposite.a : opposite.b) = v;
    pairs.push_back({opposite, inside});
  }
  std::sort(pairs.begin(), pairs.end(), [](const LinkPair& x, const LinkPair& y) {
    return std::tie(x.edge, x.vertex) < std::tie(y.edge, y.vertex);
  });
  return pairs;
}

FaceClassification classify_faces(const TriangulatedSurface& surface, const VertexSubset& subset) {
  FaceClassification out;
  for (int fi = 0; fi < static_cast<int>(surface.faces().size()); ++fi) {
    int count = 0;
    for (int v : surface.faces()[fi].v) count += subset.contains(v);
    if (count == 1) out.a1.push_back(fi);
    if (count == 2) out.a2.push_back(fi);
    if (count == 3) out.a3.push_back(fi);
  }
  return out;
}

int subcomplex_euler(const TriangulatedSurface& surface, const VertexSubset& subset) {
  int edges_inside = 0;
  for (const Edge& e : surface.edges())
    edges_inside += subset.contains(e.a) && subset.contains(e.b);
  int faces_inside = 0;
  for (const Face& f : surface.faces())
    faces_inside += subset.contains(f.v[0]) && subset.contains(f.v[1]) && subset.contains(f.v[2]);
  return subset.size() - edges_inside + faces_inside;
}

}  // namespace idcp
