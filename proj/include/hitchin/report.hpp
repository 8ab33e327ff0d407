#pragma once

// Machine-readable report rows. All numbers are exact: integers as JSON
// numbers, stacky cardinalities as "num/den" strings, polynomials as
// comma-separated coefficient lists (lowest degree first, decimal).

#include <json.hpp>

#include <string>

#include "hitchin/census.hpp"
#include "hitchin/lambda.hpp"
#include "hitchin/nilstrata.hpp"
#include "hitchin/severi.hpp"
#include "hitchin/spectral.hpp"

namespace hitchin {

using Json = nlohmann::ordered_json;

std::string poly_coeff_string(const PolyFq& p);

Json exclusion_row_json(const ExclusionRow& row);
Json exclusion_sweep_json(const GeometrySetup& setup, const ExclusionSweep& sweep);
Json dims_json(const GeometrySetup& setup);
Json lambda_list_json(const std::vector<StratumLabel>& labels, const GeometrySetup* setup);
Json severi_json(const SevereLedgerEntry& entry, const SevereLedgerReport& report);
Json proposition_row_json(const PropositionRow& row);
Json proposition_json(const PropositionReport& report);
Json classification_json(const SpectralClassification& cls);
Json sample_table_json(const SampleTable& table);
Json label_json(const LabelKey& label);
Json stacky_count_json(const CensusParams& params, const LabelKey& label, DegreeConvention convention,
                       const StackyCount& count);
Json identity_json(const CensusParams& params, const IdentityReport& report);
Json calibration_json(uint32_t q, int64_t n, int64_t e, int64_t window, const CalibrationReport& report);

// Rendering. CSV flattens nested objects with dotted keys and emits the keys
// in sorted order; table is the same flattening, aligned.
std::string render_json_lines(const std::vector<Json>& rows);
std::string render_csv(const std::vector<Json>& rows);
std::string render_table(const std::vector<Json>& rows);
std::string render(const std::vector<Json>& rows, const std::string& format);

}  // namespace hitchin
