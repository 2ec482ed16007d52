#pragma once
/// Serialization: JSON round-trips for classification and solver results
/// (doubles survive bit-for-bit; non-finite values encode as strings), OBJ
/// and CSV mesh export, and report rendering.

#include <json.hpp>

#include "lgq/bianalytic.hpp"
#include "lgq/conjsim.hpp"
#include "lgq/hyperplanes.hpp"
#include "lgq/surface.hpp"

namespace lgq {

using json = nlohmann::json;

json jnum(double v); // finite -> number, else "inf"/"-inf"/"nan" strings
double jnum_get(const json& j);
json to_json(C v);
C complex_from_json(const json& j);

json to_json(const ConjClass& c);
ConjClass conjclass_from_json(const json& j);
bool equal_bits(const ConjClass& a, const ConjClass& b);

json to_json(const EFixSet& e);
json to_json(const HyperplaneClass& h);
json to_json(const AreaResult& a);
json to_json(const RootCertificate& r);
RootCertificate rootcert_from_json(const json& j);
json to_json(const EfResult& r);
EfResult efresult_from_json(const json& j);
bool equal_bits(const EfResult& a, const EfResult& b);
json to_json(const BoundsReport& b);
json to_json(const WReport& r);
json to_json(const TotalCurvature& t);

/// OBJ export: "v x1 x2 x3" per valid vertex, "# t x4" comment carrying the
/// fourth coordinate, then "f i j k" (1-based, remapped to the kept vertices).
void write_obj(const SurfaceMesh& mesh, const std::string& path);

/// CSV export with fixed columns: z_re, z_im, x1, x2, x3, x4, lambda2, K.
void write_csv(const SurfaceMesh& mesh, const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

} // namespace lgq
