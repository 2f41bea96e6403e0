#pragma once

#include <string>
#include <vector>

#include "core/surface.hpp"
#include "core/theory.hpp"

namespace tmf {

// Simple closed curves on a decomposed surface.  Catalog kinds name curves by
// combinatorial position; `arc` is the routable core both eps and annulus
// entries expand to (a curve around a cyclically consecutive run of leaves);
// `normal` carries an explicit crossing sequence.
enum class CurveKind { type1, type2, type3, braid, eps, annulus, arc, normal };

// One crossing of a normal curve with the decomposition skeleton.
// kind 'c': cuff a.  kind 's': seam b of pant a (seam k runs between legs k
// and k+1 of its pant).
struct Crossing {
  char kind = 'c';
  int a = -1;
  int b = -1;
  bool operator==(const Crossing&) const = default;
};

struct Curve {
  CurveKind kind = CurveKind::normal;
  // type1: {cuff}; type2/type3/annulus: {handle}; braid: {puncture};
  // eps: {i, j}; arc: {start, count} over canon_leaves order.
  std::vector<int> idx;
  std::vector<Crossing> crossings;
  bool operator==(const Curve&) const = default;
};

// Canonical cyclic leaf order: walk_leaves rotated to start at the first
// leaf of all_leaves and oriented so the second leaf follows when possible.
std::vector<LeafTok> canon_leaves(const PantsDecomposition& d);

// op 't' = Dehn twist literal, 'b' = braid literal.
struct CatalogEntry {
  std::string name;
  char op = 't';
  Curve curve;
};

std::vector<CatalogEntry> generator_catalog(const PantsDecomposition& d,
                                            const Theory& th);

// A curve that routes as a single twist or braid, with an orientation
// exponent (composite catalog entries expand to more than one part).
struct CurvePart {
  Curve curve;
  int exp = 1;
};

// Expand eps / annulus (and pass through the directly routable kinds).
// Normal curves are recognized against the catalog first.
std::vector<CurvePart> expand_curve(const PantsDecomposition& d,
                                    const Curve& curve);

struct RouteResult {
  std::vector<Move> moves;   // forward word; inverses are the reversal
  PantsDecomposition d;      // decomposition after the forward word
  int cuff = -1;             // cuff carrying the curve in d (twists)
  int pant = -1;             // pant acting as gate site (S/braid gates)
};

RouteResult route_to_cuff(const PantsDecomposition& d, const Curve& curve);

// Coerce a curve used in a braid literal to the braid kind: recognizes
// normal coordinates and accepts a two-leaf arc around adjacent punctures.
Curve resolve_braid_curve(const PantsDecomposition& d, const Curve& curve);

// Crossing-sequence machinery for normal coordinates.
std::vector<Crossing> reduce_crossings(std::vector<Crossing> xs);
std::vector<Crossing> canonical_crossings(const PantsDecomposition& d,
                                          const Curve& curve);
int curve_length(const PantsDecomposition& d, const Curve& curve);
Curve recognize_normal(const PantsDecomposition& d, const Curve& normal);

struct WordLiteral {
  char op = 't';  // 't' twist, 'b' braid
  Curve curve;
  int exp = 1;
};

struct MappingClassWord {
  std::vector<WordLiteral> literals;
};

Curve parse_curve_spec(const std::string& spec);
std::string format_curve_spec(const Curve& c);
std::string catalog_name(const Curve& c);
MappingClassWord parse_word(const std::string& text);
std::string format_word(const MappingClassWord& w);

}  // namespace tmf
