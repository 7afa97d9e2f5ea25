#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

#include "kernelab/features.hpp"
#include "kernelab/gram.hpp"
#include "kernelab/ktransform.hpp"
#include "kernelab/ordering.hpp"

namespace kernelab {

using Json = nlohmann::json;

/// Scalars print as "re" or "re+imi" / "re-imi" with %.17g digits, enough to
/// round-trip doubles exactly; parse_scalar_token in the sampling grammar
/// reads the same format back.
std::string format_scalar(Scalar z);

Json domain_to_json(const Domain& d);
Domain domain_from_json(const Json& j);

Json point_set_to_json(const PointSet& pts);
PointSet point_set_from_json(const Json& j);

/// Structural kernel descriptor: {"node": ..., parameters, "children": [...]}.
/// Round-trips every expression the factories can build.
Json kernel_to_json(const ExprPtr& k);
ExprPtr kernel_from_json(const Json& j);

Json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const Json& j);

Json gram_to_json(const GramMatrix& g);

/// Gram matrix as CSV: a header row of point labels, then rows of formatted
/// complex entries.
std::string gram_to_csv(const GramMatrix& g);

/// Order-chain report as CSV rows (n, min_eig, verdict).
std::string chain_to_csv(const ChainReport& r);

/// Diagonal spectrum as CSV rows (n, lambda_n).
std::string spectrum_to_csv(const std::vector<Rational>& lambda);

Json measure_to_json(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_json(const Json& j);

Json empirical_to_json(const EmpiricalGram& e);

Json distribution_to_json(const std::vector<Scalar>& coeffs);
std::vector<Scalar> distribution_from_json(const Json& j);

/// Write via temp file + rename so readers never observe partial artifacts.
void atomic_write(const std::filesystem::path& path, const std::string& contents);

}  // namespace kernelab
