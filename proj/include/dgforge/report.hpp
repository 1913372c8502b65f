#pragma once

#include <iosfwd>
#include <json.hpp>

#include "dgforge/derived.hpp"

namespace dgforge {

using Json = nlohmann::ordered_json;

/** Rows {degree, dim, certified} in degree order. */
Json table_json(const CohomologyTable& t);
Json betti_json(const BettiTable& b);
Json verdict_json(const Verdict& v);
Json window_json(DegreeWindow w);
/** Dimension of s in each degree of A, as {degree: dim}. */
template <class K> Json graded_dims_json(const FdDga<K>& a, const Subspace<K>& s);
template <class K> Json algebra_summary(const FdDga<K>& a);
template <class K> Json module_summary(const DgModule<K>& m);
Json violations_json(const std::vector<Violation>& v);

/**
 * Human rendering: scalars as "key: value", arrays of flat objects with equal
 * keys as aligned tables, nested objects indented.
 */
void render_human(const Json& j, std::ostream& os, int indent = 0);

}  // namespace dgforge
