#pragma once

#include <json.hpp>

#include "twocover/conic.hpp"
#include "twocover/parse.hpp"

namespace twocover::cli {

using nlohmann::json;

// --- output serialization (coefficient-map schema, exact strings) ---

json to_json(const arith::Rational& q);
json to_json(const arith::UniPoly& p);
json to_json(const arith::HomPoly3& p);
json to_json(const arith::RatFunc& f);
json to_json(const arith::P2Func& f);
json to_json(const arith::Mat2<arith::RatFunc>& m);
json to_json(const arith::Mat2<arith::P2Func>& m);
json to_json(const p1::SplittingType& s);
json to_json(const conic::LineInP2& line);
json to_json(const conic::SectionBasis& basis);
json to_json(const conic::RestrictedLineBundle& r);
json to_json(const conic::P2Rep& rep);
json to_json(const conic::P1Rep& rep);

// --- input parsing (expression-string entries) ---

arith::RatFunc ratfunc_from_json(const json& j);
arith::P2Func p2func_from_json(const json& j);
arith::Mat2<arith::RatFunc> mat2r_from_json(const json& j);
arith::Mat2<arith::P2Func> mat2p_from_json(const json& j);
conic::LineInP2 line_from_json(const json& j);
conic::P2Rep p2rep_from_json(const json& j);
conic::P1Rep p1rep_from_json(const json& j);

// Lossless text rendering of an output tree.
std::string render_text(const json& j);

}  // namespace twocover::cli
