#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "core/theory.hpp"
#include "core/util.hpp"

namespace tmf {

// A leg either carries boundary component `id` or one end of cuff `id`.
struct LegRef {
  char kind = 0; // 'b' or 'c'
  int id = -1;
  bool operator==(const LegRef&) const = default;
};

struct End {
  int pant = -1, leg = -1;
  bool operator==(const End&) const = default;
};

struct Pant {
  std::array<LegRef, 3> leg;
  // seam marking: winding of the seam triple, 0 in every freshly built
  // decomposition; M moves increment it, F and S transport it unchanged.
  int seam = 0;
  bool operator==(const Pant&) const = default;
};

// End order is part of the data: a label stored on the cuff is read at e[0]
// and dualized at e[1].
struct Cuff {
  std::array<End, 2> e;
  bool operator==(const Cuff&) const = default;
};

struct PantsDecomposition {
  std::vector<Pant> pants;
  std::vector<Cuff> cuffs;
  std::vector<int> boundary_labels; // by boundary index

  int npants() const { return static_cast<int>(pants.size()); }
  int ncuffs() const { return static_cast<int>(cuffs.size()); }
  int nboundary() const { return static_cast<int>(boundary_labels.size()); }
  // k = -chi = 2g - 2 + b
  int genus() const { return (npants() + 2 - nboundary()) / 2; }
  int cycle_rank() const { return ncuffs() - npants() + 1; }
  // first Betti number of the surface itself
  int b1() const {
    int b = nboundary();
    return 2 * genus() + (b > 0 ? b - 1 : 0);
  }

  bool is_self_cuff(int cid) const { return cuffs[cid].e[0].pant == cuffs[cid].e[1].pant; }
  // self-glued cuff on pant p, or -1
  int self_cuff_of(int p) const;
  // the one non-self cuff of a self-glued pant, or -1
  int upcuff_of(int p) const;
  End boundary_end(int bid) const; // throws when absent

  void validate() const; // structural invariants; throws Err::consistency

  bool operator==(const PantsDecomposition&) const = default;
};

struct Move {
  char kind = 0; // 'F', 'S', 'M'
  int arg = -1;  // cuff id for F, pant id for S and M
  int dir = +1;  // F/S: +1 or -1; M: twist power
  bool operator==(const Move&) const = default;
};

Move inverse_move(const Move& mv);

// Graph rewrite only; coefficient actions live in hilbert and compiler.
PantsDecomposition apply_move(const PantsDecomposition& d, const Move& mv);

PantsDecomposition standard_decomposition(int genus, const std::vector<int>& blabels);
// pair pants on a comb spine; braid-localized base for labeled spheres, q >= 3
PantsDecomposition caterpillar_decomposition(const std::vector<int>& blabels);

// Leaves of the dual tree once every handle gadget is shrunk to a point:
// boundary components and handles (the latter named by self-cuff id).
struct LeafTok {
  char kind = 0; // 'b' or 'h'
  int id = -1;
  bool operator==(const LeafTok&) const = default;
  bool operator<(const LeafTok& o) const { return kind != o.kind ? kind < o.kind : id < o.id; }
};

// Cyclic leaf order read off the ribbon boundary walk (leg l continues at
// leg l+1 mod 3). Standard and caterpillar bases list boundaries 0..b-1 then
// handles in self-cuff id order.
std::vector<LeafTok> walk_leaves(const PantsDecomposition& d);
std::vector<LeafTok> all_leaves(const PantsDecomposition& d);

// Leaf sets on the two sides of a non-self cuff; nullopt for self-glued.
std::optional<std::array<std::vector<LeafTok>, 2>>
leaf_sides(const PantsDecomposition& d, int cid);

// sorted leaf set of the subtree hanging across leg (p,l)
std::vector<LeafTok> subtree_leaves(const PantsDecomposition& d, int p, int l);

// cuff whose sides realize the partition {arc, complement}, or -1
int find_separating(const PantsDecomposition& d, const std::vector<LeafTok>& arc);

// BFS path between two pants in the dual graph, self-cuffs excluded;
// returns the cuff ids crossed
std::vector<int> pant_path(const PantsDecomposition& d, int pa, int pb);

// Forced F(+1) merges until `pred` holds. Every routing template reduces to
// this loop with a different stop condition.
struct Grouping {
  std::vector<Move> moves;
  PantsDecomposition d;
  int cuff = -1; // separating cuff when the predicate is separation
};

// merge until a cuff separates arc from its complement (arc must be a
// cyclically consecutive run of walk_leaves with a complement of >= 2 leaves,
// or a singleton-handle complement)
Grouping group_arc(const PantsDecomposition& d, const std::vector<LeafTok>& arc,
                   int move_cap = 200);
// merge until the two gadget pants hang off a common pant
Grouping group_handle_pair(const PantsDecomposition& d, int sid_a, int sid_b,
                           int move_cap = 200);
// merge until two boundary legs sit on one pant
Grouping group_two_boundaries(const PantsDecomposition& d, int ba, int bb,
                              int move_cap = 200);

// Fallback router: breadth-first search over F rewrites for a cuff separating
// the arc, bounded by depth_cap. Deduplicates decompositions by graph shape.
std::optional<Grouping> bfs_group_arc(const PantsDecomposition& d,
                                      const std::vector<LeafTok>& arc, int depth_cap);

int gadget_parent(const PantsDecomposition& d, int gadget_pant);
End holder_of(const PantsDecomposition& d, const LeafTok& tok);

// Adjacency moves on an abstract trivalent tree, encoded as a genus-0
// decomposition. Returns f-moves after which the two leaves share a pant.
std::vector<Move> tree_adjacency_moves(const PantsDecomposition& tree, int leaf1, int leaf2);

// The systematic base-change of the braid case: F moves carrying the pair
// caterpillar of an even-punctured sphere onto the shifted-pair
// decomposition. Length 2q-7 on the comb (1 at q=4).
std::vector<Move> alpha_to_beta_moves(const std::vector<int>& blabels);

PantsDecomposition parse_surface(const std::string& text, const Theory& th);
std::string format_surface(const PantsDecomposition& d, const Theory& th);

// Genus and boundary labels alone, accepting shapes that have no pants
// decomposition (disk, annulus, bare sphere or torus). Dimension queries
// need no more than this.
struct SurfaceHeader {
  int genus = 0;
  std::vector<int> blabels;
};
SurfaceHeader parse_surface_header(const std::string& text, const Theory& th);

} // namespace tmf
