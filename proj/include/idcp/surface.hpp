// Combinatorics of closed triangulated surfaces and vertex subsets.
#pragma once

#include <array>
#include <vector>

#include "idcp/error.hpp"

namespace idcp {

// Vertices are 1-based and contiguous. An edge stores its endpoints with a < b.
struct Edge {
  int a = 0;
  int b = 0;

  friend bool operator==(const Edge& x, const Edge& y) = default;
  friend auto operator<=>(const Edge& x, const Edge& y) = default;
};

// A face stores its vertices sorted ascending. Input triples may come in any
// order; construction canonicalizes them.
struct Face {
  std::array<int, 3> v{};
};

class TriangulatedSurface {
 public:
  // Builds the complex and validates that it is a closed surface: no repeated
  // or duplicate faces, every edge in exactly two faces, no isolated vertex.
  TriangulatedSurface(int vertex_count, const std::vector<std::array<int, 3>>& face_triples);

  int vertex_count() const { return vertex_count_; }
  const std::vector<Face>& faces() const { return faces_; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Index into edges() for endpoints {a, b}; throws invalid_face if absent.
  int edge_index(int a, int b) const;

  // Indices of the faces incident to a vertex, in face order.
  const std::vector<int>& faces_at(int vertex) const;

  // The two faces sharing an edge.
  const std::array<int, 2>& faces_of_edge(int edge) const { return edge_faces_[edge]; }

  int vertex_degree(int vertex) const { return static_cast<int>(faces_at(vertex).size()); }

  int euler_characteristic() const;

 private:
  int vertex_count_ = 0;
  std::vector<Face> faces_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 2>> edge_faces_;
  std::vector<std::vector<int>> vertex_faces_;  // indexed by vertex - 1
};

// A nonempty proper subset of the vertices, sorted ascending.
class VertexSubset {
 public:
  VertexSubset(const TriangulatedSurface& surface, std::vector<int> members);

  const std::vector<int>& members() const { return members_; }
  bool contains(int vertex) const;
  int size() const { return static_cast<int>(members_.size()); }

 private:
  std::vector<int> members_;
};

// An edge of the link of A together with the subset vertex it faces: the edge
// endpoints lie outside A, the vertex lies in A, and the three span a face.
struct LinkPair {
  Edge edge;
  int vertex = 0;
};

// All link pairs of A, sorted lexicographically by (edge, vertex).
std::vector<LinkPair> link_pairs(const TriangulatedSurface& surface, const VertexSubset& subset);

// Faces split by how many of their vertices lie in A. Faces disjoint from A
// are not listed.
struct FaceClassification {
  std::vector<int> a1;  // exactly one vertex in A
  std::vector<int> a2;  // exactly two
  std::vector<int> a3;  // all three
};

FaceClassification classify_faces(const TriangulatedSurface& surface, const VertexSubset& subset);

// Euler characteristic of the subcomplex induced by A: vertices of A, edges
// with both endpoints in A, faces with all vertices in A.
int subcomplex_euler(const TriangulatedSurface& surface, const VertexSubset& subset);

}  // namespace idcp
