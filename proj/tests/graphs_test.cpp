#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "forcecert/graphs/bipartite_graph.hpp"
#include "forcecert/graphs/families.hpp"
#include "forcecert/graphs/graph_io.hpp"
#include "forcecert/graphs/operations.hpp"

namespace forcecert {
namespace {

std::vector<std::size_t> degree_multiset(const BipartiteGraph& g) {
  std::vector<std::size_t> d;
  for (Vertex v = 0; v < g.order(); ++v) d.push_back(g.degree(v));
  std::sort(d.begin(), d.end());
  return d;
}

std::size_t components(const BipartiteGraph& g) {
  std::vector<int> seen(g.order(), 0);
  std::size_t count = 0;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (seen[s]) continue;
    ++count;
    std::vector<Vertex> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
  }
  return count;
}

TEST(CartesianProduct, K2TimesK2IsC4) {
  BipartiteGraph c4 = cartesian_product(k2(), k2());
  EXPECT_EQ(c4.order(), 4U);
  EXPECT_EQ(c4.size(), 4U);
  EXPECT_EQ(degree_multiset(c4), (std::vector<std::size_t>{2, 2, 2, 2}));
  EXPECT_TRUE(c4.audit_bipartition());
  EXPECT_EQ(c4.label(1), "(0,1)");
}

TEST(CartesianProduct, Q2TimesK2IsQ3) {
  BipartiteGraph q3 = cartesian_product(hypercube(2), k2());
  EXPECT_EQ(q3.order(), 8U);
  EXPECT_EQ(q3.size(), 12U);
  EXPECT_TRUE(q3.same_structure(hypercube(3)));
}

TEST(CartesianProduct, K22TimesC4) {
  BipartiteGraph g = cartesian_product(complete_bipartite(2, 2), cycle(4));
  EXPECT_EQ(g.order(), 16U);
  // Degree sum: every vertex has 2 neighbors in K22 and 2 in C4.
  EXPECT_EQ(g.size(), 32U);
  EXPECT_TRUE(g.audit_bipartition());
}

TEST(CartesianProduct, OddCycleFactorIsRejected) {
  EXPECT_THROW(cartesian_product(k2(), simple_cycle(5)), NotBipartite);
  EXPECT_NO_THROW(cartesian_product(k2(), simple_cycle(6)));
}

TEST(CartesianProduct, CommutativeUpToRelabeling) {
  std::vector<BipartiteGraph> corpus{k2(), path(3), cycle(6), complete_bipartite(2, 3), star(3), hypercube(2), bcp(3)};
  for (const auto& a : corpus) {
    for (const auto& b : corpus) {
      BipartiteGraph ab = cartesian_product(a, b);
      BipartiteGraph ba = cartesian_product(b, a);
      EXPECT_EQ(ab.order(), ba.order());
      EXPECT_EQ(ab.size(), ba.size());
      EXPECT_EQ(degree_multiset(ab), degree_multiset(ba));
      EXPECT_TRUE(ab.audit_bipartition());
    }
  }
}

TEST(CartesianProduct, HypercubeRecursion) {
  for (std::size_t d = 2; d <= 6; ++d) {
    BipartiteGraph lifted = cartesian_product(hypercube(d - 1), k2());
    BipartiteGraph direct = hypercube(d);
    EXPECT_TRUE(lifted.same_structure(direct)) << d;
    // Labels of the product concatenate to the binary label.
    for (Vertex v = 0; v < direct.order(); ++v) {
      std::string l = lifted.label(v);
      l.erase(std::remove_if(l.begin(), l.end(), [](char c) { return c == '(' || c == ')' || c == ','; }), l.end());
      EXPECT_EQ(l, direct.label(v));
    }
  }
}

TEST(Families, CompleteBipartiteAndStar) {
  BipartiteGraph g = complete_bipartite(2, 3);
  EXPECT_EQ(g.order(), 5U);
  EXPECT_EQ(g.size(), 6U);
  EXPECT_EQ(star(4).side_size(Side::Y), 4U);
}

TEST(Families, S14) {
  BipartiteGraph g = s14();
  EXPECT_EQ(g.order(), 14U);
  EXPECT_EQ(g.size(), 28U);
  for (Vertex v = 0; v < g.order(); ++v) EXPECT_EQ(g.degree(v), 4U);
  EXPECT_TRUE(g.is_signed());
  EXPECT_EQ(g.sign(g.at("x0"), g.at("y6")), -1);
  EXPECT_EQ(g.sign(g.at("x0"), g.at("y3")), 1);
}

TEST(Families, GPrime) {
  BipartiteGraph g = g_prime();
  EXPECT_EQ(g.order(), 14U);
  EXPECT_EQ(g.size(), 41U);
  EXPECT_FALSE(g.has_edge(g.at("x0"), g.at("y2")));
  EXPECT_TRUE(g.has_edge(g.at("x6"), g.at("y6")));
}

TEST(Families, FoldedHypercubeAndBlowups) {
  EXPECT_THROW(folded_hypercube(4), NotBipartite);
  BipartiteGraph fq3 = folded_hypercube(3);
  EXPECT_EQ(fq3.size(), 12U + 4U);
  EXPECT_TRUE(fq3.audit_bipartition());
  BipartiteGraph c4x2 = blowup_cycle(2);
  EXPECT_EQ(c4x2.order(), 8U);
  EXPECT_EQ(c4x2.size(), 16U);
  EXPECT_EQ(bcp(4).size(), 12U);
  EXPECT_THROW(cycle(7), NotBipartite);
}

TEST(BipartiteDouble, Examples) {
  BipartiteGraph k2k2 = bipartite_double(SimpleGraph::from(k2()));
  EXPECT_EQ(k2k2.order(), 4U);
  EXPECT_EQ(k2k2.size(), 2U);
  EXPECT_EQ(components(k2k2), 2U);

  BipartiteGraph c6 = bipartite_double(simple_cycle(3));
  EXPECT_EQ(c6.order(), 6U);
  EXPECT_EQ(c6.size(), 6U);
  EXPECT_EQ(components(c6), 1U);
  EXPECT_EQ(degree_multiset(c6), std::vector<std::size_t>(6, 2));

  BipartiteGraph twice_c4 = bipartite_double(simple_cycle(4));
  EXPECT_EQ(twice_c4.size(), 8U);
  EXPECT_EQ(components(twice_c4), 2U);
  EXPECT_EQ(degree_multiset(twice_c4), std::vector<std::size_t>(8, 2));
}

TEST(BipartiteDouble, EdgeCountIsTwiceTheOriginal) {
  for (std::size_t n = 3; n <= 7; ++n) {
    SimpleGraph k = complete_graph(n);
    BipartiteGraph d = bipartite_double(k);
    EXPECT_EQ(d.size(), 2 * k.size());
    EXPECT_TRUE(d.audit_bipartition());
  }
}

TEST(DeleteXVertices, Examples) {
  BipartiteGraph k33 = complete_bipartite(3, 3);
  BipartiteGraph k23 = delete_x_vertices(k33, std::vector<std::string>{"x2"});
  EXPECT_EQ(k23.side_size(Side::X), 2U);
  EXPECT_EQ(k23.size(), 6U);

  BipartiteGraph leaves = delete_x_vertices(star(5), std::vector<std::string>{"x0"});
  EXPECT_EQ(leaves.order(), 5U);
  EXPECT_EQ(leaves.size(), 0U);

  BipartiteGraph g = g_prime();
  BipartiteGraph h = delete_x_vertices(g, std::vector<std::string>{"x0", "x4"});
  EXPECT_EQ(h.order(), 12U);
  // x0 has 5 neighbors, x4 has 7 in the G' table.
  EXPECT_EQ(h.size(), 41U - 5U - 7U);
  // Column y2 is nonzero in rows x2..x6; deleting x4 leaves 4.
  EXPECT_EQ(h.degree(h.at("y2")), 4U);

  EXPECT_THROW(delete_x_vertices(k33, std::vector<std::string>{"y0"}), PreconditionError);
}

TEST(UnionGraph, Examples) {
  auto rename_leaves = [](const std::string& prefix) {
    return [prefix](const std::string& l) { return l[0] == 'y' ? prefix + l : l; };
  };
  std::vector<BipartiteGraph> shared{relabeled(star(2), rename_leaves("a")), relabeled(star(2), rename_leaves("b"))};
  BipartiteGraph u = union_graph(shared);
  EXPECT_EQ(u.order(), 5U);
  EXPECT_EQ(u.side_size(Side::X), 1U);

  std::vector<BipartiteGraph> disjoint{relabeled(star(2), [](const std::string& l) { return "a" + l; }),
                                       relabeled(complete_bipartite(2, 3), [](const std::string& l) { return "b" + l; })};
  EXPECT_EQ(union_graph(disjoint).order(), 8U);

  std::vector<BipartiteGraph> doubled{relabeled(complete_bipartite(2, 2), rename_leaves("a")),
                                      relabeled(complete_bipartite(2, 2), rename_leaves("b"))};
  BipartiteGraph d = union_graph(doubled);
  EXPECT_EQ(d.side_size(Side::X), 2U);
  EXPECT_EQ(d.side_size(Side::Y), 4U);
  EXPECT_EQ(d.size(), 8U);

  std::vector<BipartiteGraph> clash{star(2), star(3)};
  EXPECT_THROW(union_graph(clash), PreconditionError);
}

TEST(GraphFile, RoundTripsSignedGraph) {
  BipartiteGraph g = s14();
  const std::string text = write_graph(g);
  EXPECT_TRUE(text.starts_with("p bipartite 7 7\n"));
  BipartiteGraph back = read_graph(text);
  EXPECT_EQ(write_graph(back), text);
  EXPECT_EQ(back.sign(back.at("x3"), back.at("y2")), -1);
}

TEST(GraphFile, ReportsLineOfError) {
  try {
    read_graph("p bipartite 1 1\nv a X\nv b X\ne a b\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4U);
  }
  EXPECT_THROW(read_graph("v a X\n"), ParseError);
  EXPECT_THROW(read_graph("p bipartite 2 1\nv a X\nv b Y\n"), ParseError);
}

TEST(FamilyExpression, Builds) {
  EXPECT_EQ(parse_family("prod(Kmn:2,2;C:6)").order(), 24U);
  EXPECT_EQ(parse_family("s14").order(), 14U);
  EXPECT_TRUE(parse_family("prod(Q:2;K2)").same_structure(hypercube(3)));
  EXPECT_EQ(parse_family("bd(Cn:3)").size(), 6U);
  EXPECT_EQ(parse_family("prod(K2;Cn:4)").size(), 4U + 2U * 4U);
  EXPECT_EQ(parse_family("del(Kmn:3,3;x0,x1)").order(), 4U);
  EXPECT_EQ(parse_family("del(prod(K2;K2);(0,0))").order(), 3U);
}

TEST(FamilyExpression, ErrorsCarryPosition) {
  try {
    parse_family("prod(Kmn:2,2;Foo:3)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 13U);
  }
  try {
    parse_family("Kmn:2");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5U);
  }
  EXPECT_THROW(parse_family("prod(K2;Cn:5)"), NotBipartite);
  EXPECT_THROW(parse_family("C:5"), NotBipartite);
  EXPECT_THROW(parse_family("FQ:2"), NotBipartite);
  EXPECT_THROW(parse_family("Q:3x"), ParseError);
}

}  // namespace
}  // namespace forcecert
