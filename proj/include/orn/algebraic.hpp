#pragma once

#include "orn/core.hpp"
#include "orn/ornament.hpp"

namespace orn {

// The algebraic ornament of a family by an algebra: indices become pairs
// (i, x) with x in the carrier at i, every recursive position is decorated
// with the fold result of the subvalue it will hold, and each branch ends in
// a proof that folding the whole payload really yields x. Supports payloads
// built from var, one and sigma; throws on pi nodes.
//
// Steps are checked against their carrier as codes are probed; a stray step
// raises IllFormedAlgebra.
Ornament algebraicOrnament(const DescFun& d, const Algebra& alg);

// Decorate t into the algebraic ornament, at index (i, fold(d, alg, i, t)).
Value remember(const DescFun& d, const Algebra& alg, const Value& i, const Value& t);

// Forget a decorated value and refold it; the result must match the
// decoration of the index ix = (i, x), else RecomputationFailure. Returns
// the forgotten base value.
Value assertRecomputation(const DescFun& d, const Algebra& alg, const Value& ix,
                          const Value& tPlus);

// The algebra a plain ornament induces on its refined family: fold with it
// and you have ornForget.
Algebra forgetAlgebra(const Ornament& o);

// Everything a refined payload stores beyond what the base payload already
// determines: copied components vanish, each deletion is decided against the
// base component on the spot (a contradicted branch has an empty extension),
// and an inserted constructor enum keeps only the tags whose branches the
// base payload leaves inhabitable, dropping the choice entirely when a single
// tag survives.
SetCode extension(const Desc& base, const OrnCode& code, const Value& payload);

// Tags of an inserted constructor enum whose branch extensions the base
// payload does not rule out. The decision reads only components the extension
// itself inspects, never the payload under recursive positions.
std::vector<std::string> survivingTags(const Desc& base, const OrnCode& insert,
                                       const Value& payload);

// The ornament code positioning one extension value over the refined
// description: copied and inserted components are fixed (deleted) to what
// the base payload and the extension dictate, leaving recursive positions
// reindexed by (refined index, base subvalue).
OrnCode structureCode(const Desc& base, const OrnCode& code, const Value& payload,
                      const Value& ext);

// The reornament of o: the algebraic ornament of interpOrn(o) by
// forgetAlgebra(o), stored compactly. Indices are pairs (j, t) with t a base
// value at re.down(j); each node stores exactly its extension, so no base
// data is duplicated in the nodes.
Ornament reornament(const Ornament& o);

// Decorate a refined value into the reornament, at index
// (j, ornForget(o, j, t)).
Value rememberReorn(const Ornament& o, const Value& j, const Value& t);

// Recover the refined value a reornament value decorates.
Value forgetReorn(const Ornament& o, const Value& jt, const Value& w);

}  // namespace orn
