#pragma once

#include "nilgeo/geodesic.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace nilgeo {

inline constexpr const char* model_format = "nilgeo-model";
inline constexpr int model_version = 1;

// A model file: the recipe (type, highest weight in simple-root coordinates), the exact tensors
// of N, the lattice scale and an optional default initial vector.
struct ModelFile {
    SimpleType type;
    WeightVec lam;
    MetricNilLie model;
    Rational lattice_scale = 1;
    std::optional<GeodesicInit> xi;
};

nlohmann::ordered_json rational_vector_json(const QVec& v);
QVec rational_vector_from_json(const nlohmann::json& j);

nlohmann::ordered_json model_to_json(const ModelFile& m);
// Rebuilds N from the recipe and checks the stored tensors against it; throws InvalidInput on mismatch.
ModelFile model_from_json(const nlohmann::json& j);

ModelFile load_model(const std::string& path);
void save_model(const ModelFile& m, const std::string& path);

// Default initial vector: Z = i(t_1 tau_1 + ... ) with the smallest super regular integer labels
// in [1, 5]^rank (graded order), X with entries ((7 i mod 5) + 1) / 3, alpha = 1.
std::optional<GeodesicInit> default_init(const MetricNilLie& n);

}  // namespace nilgeo
