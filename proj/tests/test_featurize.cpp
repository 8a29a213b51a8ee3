#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <json.hpp>

#include "hignn/brics.hpp"
#include "hignn/featurize.hpp"
#include "hignn/mol.hpp"

using namespace hignn;
using namespace hignn::feat;
using nlohmann::json;

TEST_CASE("methane carbon row") {
  mol::Molecule m = mol::parse_smiles("C");
  auto row = atom_features(m, 0, true);
  REQUIRE(row.size() == 46);
  CHECK(row[1] == 1.0);    // element C
  CHECK(row[16] == 1.0);   // degree 0
  CHECK(row[31 + 4] == 1.0);  // 4 hydrogens
  CHECK(row[30] == 0.0);
  CHECK(row[39] == 0.0);
  for (int k = 40; k < 46; ++k) CHECK(row[k] == 0.0);
}

TEST_CASE("benzene atom row") {
  mol::Molecule m = mol::parse_smiles("c1ccccc1");
  auto row = atom_features(m, 0, true);
  CHECK(row[30] == 1.0);       // aromatic
  CHECK(row[39] == 1.0);       // ring
  CHECK(row[16 + 2] == 1.0);   // degree 2
  CHECK(row[31 + 1] == 1.0);   // one H
  CHECK(row[45] == 1.0);       // scaffold
  CHECK(row[24 + 1] == 1.0);   // SP2
}

TEST_CASE("carboxylic OH oxygen pharmacophores") {
  mol::Molecule m = mol::parse_smiles("CC(=O)O");
  auto row = atom_features(m, 3, true);
  CHECK(row[40] == 1.0);  // donor
  CHECK(row[41] == 1.0);  // acceptor
  CHECK(row[43] == 1.0);  // acid
  CHECK(row[42] == 0.0);
  CHECK(row[44] == 0.0);
}

TEST_CASE("one-hot groups sum to one") {
  json corpus = [] {
    std::ifstream f("tests/data/corpus_canon.json");
    json j;
    f >> j;
    return j;
  }();
  int count = 0;
  for (const auto& entry : corpus) {
    if (++count > 250) break;
    mol::Molecule m = mol::parse_smiles(entry[0].get<std::string>());
    GraphData g = featurize_graph(m, {}, true);
    for (int i = 0; i < g.n_atoms; ++i) {
      const double* row = g.x.data() + static_cast<size_t>(i) * g.atom_dim;
      auto group_sum = [&](int lo, int hi) {
        double s = 0;
        for (int k = lo; k <= hi; ++k) s += row[k];
        return s;
      };
      CHECK(group_sum(0, 15) == 1.0);
      CHECK(group_sum(16, 21) == 1.0);
      CHECK(group_sum(24, 29) == 1.0);
      CHECK(group_sum(31, 35) == 1.0);
    }
    for (int eidx = 0; eidx < g.n_edges(); ++eidx) {
      const double* row = g.e.data() + static_cast<size_t>(eidx) * kBondDim;
      double order = row[0] + row[1] + row[2] + row[3];
      double stereo = row[6] + row[7] + row[8] + row[9];
      CHECK(order == 1.0);
      CHECK(stereo == 1.0);
    }
  }
}

TEST_CASE("bond rows") {
  mol::Molecule benzene = mol::parse_smiles("c1ccccc1");
  auto row = bond_features(benzene, benzene.bonds[0]);
  REQUIRE(row.size() == 10);
  CHECK(row[3] == 1.0);  // aromatic
  CHECK(row[4] == 1.0);  // conjugated
  CHECK(row[5] == 1.0);  // ring

  mol::Molecule ethane = mol::parse_smiles("CC");
  row = bond_features(ethane, ethane.bonds[0]);
  CHECK(row[0] == 1.0);
  CHECK(row[4] == 0.0);
  CHECK(row[6] == 1.0);  // stereo none

  mol::Molecule butene = mol::parse_smiles("C/C=C/C");
  const mol::Bond* central = butene.bond_between(1, 2);
  REQUIRE(central != nullptr);
  row = bond_features(butene, *central);
  CHECK(row[1] == 1.0);  // double
  CHECK(row[8] == 1.0);  // E
}

TEST_CASE("full-atom subset is bit-identical to whole molecule") {
  mol::Molecule m = mol::parse_smiles("CC(=O)Nc1ccc(O)cc1");
  GraphData whole = featurize_graph(m, {}, true);
  std::vector<int> all(m.n_atoms());
  for (int i = 0; i < m.n_atoms(); ++i) all[i] = i;
  GraphData sub = featurize_graph(m, all, true);
  CHECK(whole.x == sub.x);
  CHECK(whole.e == sub.e);
  CHECK(whole.edge_src == sub.edge_src);
  CHECK(whole.edge_dst == sub.edge_dst);
}

TEST_CASE("fragment degree restricted to subset") {
  mol::Molecule m = mol::parse_smiles("CC(=O)Nc1ccccc1");
  auto fs = brics::fragment(m);
  REQUIRE(fs.fragments.size() == 2);
  // anilino fragment: N keeps parent H count but loses the acyl neighbor
  const auto& anilino = fs.fragments[1];
  REQUIRE(anilino[0] == 3);  // the nitrogen
  GraphData g = featurize_graph(m, anilino, true);
  const double* nrow = g.x.data();
  CHECK(nrow[16 + 1] == 1.0);     // subset degree 1
  CHECK(nrow[31 + 1] == 1.0);     // parent H count (one H)
  // same atom in the whole molecule has degree 2
  auto wrow = atom_features(m, 3, true);
  CHECK(wrow[16 + 2] == 1.0);
}

TEST_CASE("disconnected subset raises") {
  mol::Molecule m = mol::parse_smiles("CCCC");
  CHECK_THROWS_AS(featurize_graph(m, {0, 3}, true), DisconnectedSubset);
}

TEST_CASE("widths and extras flag") {
  mol::Molecule m = mol::parse_smiles("CCO");
  GraphData base = featurize_graph(m, {}, false);
  GraphData ext = featurize_graph(m, {}, true);
  CHECK(base.atom_dim == 40);
  CHECK(ext.atom_dim == 46);
  CHECK(base.x.size() == 3 * 40);
  CHECK(ext.x.size() == 3 * 46);
  // first 40 slots agree
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 40; ++k)
      CHECK(base.x[i * 40 + k] == ext.x[i * 46 + k]);
}

TEST_CASE("halogen flag matches element across corpus") {
  json corpus = [] {
    std::ifstream f("tests/data/corpus_canon.json");
    json j;
    f >> j;
    return j;
  }();
  int count = 0;
  for (const auto& entry : corpus) {
    if (++count > 200) break;
    mol::Molecule m = mol::parse_smiles(entry[0].get<std::string>());
    auto ph = pharmacophores(m);
    for (int i = 0; i < m.n_atoms(); ++i) {
      int z = m.atoms[i].z;
      bool hal = z == 9 || z == 17 || z == 35 || z == 53;
      CHECK(ph.halogen[i] == hal);
      // acid implies acceptor on at least one O of the group
      if (ph.acid[i] && m.atoms[i].z == 8) CHECK(ph.acceptor[i]);
    }
  }
}
