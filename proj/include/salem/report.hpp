#pragma once

// Canonical JSON and CSV renderings of every result type, plus atomic file
// output. JSON objects have sorted keys and reals use 12 significant digits;
// non-finite reals are written as null.

#include "salem/aps.hpp"
#include "salem/cantor.hpp"
#include "salem/core_sets.hpp"
#include "salem/equidist.hpp"
#include "salem/measures.hpp"
#include "salem/randfrac.hpp"

#include <json.hpp>

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace salem::report {

using Json = nlohmann::json;

std::string canonical_json(const Json& value);

/// %.12g.
std::string format_real(double x);

Json complex_json(std::complex<double> z);
Json to_json(const IntegerSet& set);
Json to_json(const DensityEstimate& d);
Json to_json(const std::vector<SpectrumSample>& spectrum);
Json to_json(const LevelPlan& plan);
Json to_json(const CantorStage& stage);
Json to_json(const DecayReport& r);
Json to_json(const NApproximation& a);
Json to_json(const OrderEstimate& e);
Json to_json(const CharacterizationReport& r);
Json to_json(const IntegerAP& w);
Json to_json(const RationalAP& w);
Json to_json(const DescentResult& r);
Json to_json(const HypothesisReport& r);
Json to_json(const TrialResult& t);
Json to_json(const DimensionStats& s);
Json to_json(const LemmaCheckReport& r);
Json to_json(const StageSweepRow& row);

/// "<first>,re,im,abs" rows.
void write_spectrum_csv(std::ostream& out, const std::string& first_column,
                        const std::vector<std::pair<double, std::complex<double>>>& rows);
void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumSample>& spectrum,
                        const std::string& first_column = "k");
/// "start,difference,length".
void write_witness_csv(std::ostream& out, const std::vector<IntegerAP>& witnesses);
void write_witness_csv(std::ostream& out, const std::vector<RationalAP>& witnesses);

/// Writes a sibling temporary file and renames it over `path`. Throws IoError.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace salem::report
