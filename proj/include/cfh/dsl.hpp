#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cfh/algebra.hpp"
#include "cfh/cochain.hpp"

namespace cfh {

// ---------------------------------------------------------------------------
// Definition files
//
// A definition file is a sequence of blocks:
//
//   [algebra]            product table of the algebra (required, first)
//   [bimodule]           left/right action tables (optional, at most one)
//   [cochain <name>]     a cochain over the algebra (any number, unique names)
//   [extension]          fiber product table of a split extension (optional)
//
// Lines inside a block are `key = value` settings or indexed table entries:
//
//   [algebra]
//   rank = 2
//   prod 0 1 = ["d + 2*l1", "0"]
//
//   [bimodule]
//   rank = 1
//   left 0 0 = ["1"]      # left i j: generator i acting on module element j
//   right 0 0 = ["1"]     # right j i: module element j acted on by i
//
//   [cochain der]
//   degree = 1
//   coefficients = regular
//   value 0 = ["d"]
//
//   [extension]
//   prod 0 0 = ["1"]      # fiber product entries, bimodule-rank indexing
//
// `d` denotes the translation operator and `l<k>` the k-th product
// parameter; `#` starts a comment; absent table entries default to zero
// vectors.  Product and action tables may only mention d and l1; a value of
// a degree-n cochain may mention d and l1..l(n-1) (none at degree 0, where
// `value = [...]` sets the single entry).  Indices are 0-based.
// ---------------------------------------------------------------------------

struct AlgebraDef {
  int rank = 0;
  // Dense rank x rank table; entries are rank-sized vectors.
  std::vector<std::vector<PolyVector>> prod;
  bool operator==(const AlgebraDef&) const = default;
};

struct BimoduleDef {
  int rank = 0;
  std::vector<std::vector<PolyVector>> left;   // [algebra index][module index]
  std::vector<std::vector<PolyVector>> right;  // [module index][algebra index]
  bool operator==(const BimoduleDef&) const = default;
};

struct CochainDef {
  std::string name;
  int degree = 0;
  bool over_bimodule = false;  // `coefficients = bimodule` (default: regular)
  // Sparse: only nonzero values; keys are degree-length index tuples.
  std::map<std::vector<int>, PolyVector> values;
  bool operator==(const CochainDef&) const = default;
};

struct ExtensionDef {
  // Dense fiber-rank square table; all-zero means the trivial extension.
  std::vector<std::vector<PolyVector>> fiber_prod;
  bool operator==(const ExtensionDef&) const = default;
};

struct DefinitionFile {
  AlgebraDef algebra;
  std::optional<BimoduleDef> bimodule;
  std::vector<CochainDef> cochains;  // in file order
  std::optional<ExtensionDef> extension;
  bool operator==(const DefinitionFile&) const = default;
};

// Parses definition text.  Errors (syntax, rank inconsistencies, illegal
// variables, lambda indices out of range for the declared degree) throw
// Error with a "line:column: message" prefix.  Explicitly written zero
// entries are dropped, so parsing also canonicalizes.
DefinitionFile parse_definition(const std::string& text);

// Canonical text form: blocks in algebra / bimodule / cochain / extension
// order, settings before entries, entries in index order, zero entries
// omitted, vectors quoted.  parse_definition(print_definition(x)) == x for
// any x that contains no zero table entries (the canonical forms).
std::string print_definition(const DefinitionFile& def);

// Parses a single polynomial in d, l1, l2, ... (the entry syntax used
// inside vectors).  Throws Error on malformed input.
Poly parse_poly(const std::string& text);

// The engine objects a definition file denotes.  Cochains take coefficients
// in the regular bimodule unless they declare `coefficients = bimodule`.
struct Materialized {
  AlgebraPtr algebra;
  BimodulePtr bimodule;  // null when the file has no bimodule block
  std::vector<std::pair<std::string, Cochain>> cochains;  // in file order
};
Materialized materialize(const DefinitionFile& def);

// Renders a cochain as a `[cochain <name>]` block in the file syntax
// (zero values omitted), for displaying operation results.
std::string render_cochain_block(const Cochain& c, const std::string& name);

}  // namespace cfh
