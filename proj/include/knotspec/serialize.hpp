#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "knotspec/curve.hpp"
#include "knotspec/laurent.hpp"
#include "knotspec/projection.hpp"
#include "knotspec/secants.hpp"
#include "knotspec/spectrum.hpp"

namespace knotspec {

using Json = nlohmann::json;

inline constexpr const char* kSpectrumSchema = "knotspec.spectrum/1";
inline constexpr const char* kComparisonSchema = "knotspec.comparison/1";
inline constexpr const char* kFMeasureSchema = "knotspec.fmeasure/1";
inline constexpr const char* kQuadrisecantSchema = "knotspec.quadrisecants/1";
inline constexpr const char* kDiagramSchema = "knotspec.diagram/1";
inline constexpr const char* kGenericitySchema = "knotspec.genericity/1";
inline constexpr const char* kHeight3Schema = "knotspec.height3/1";
inline constexpr const char* kCurvesSchema = "knotspec.curves/1";

/// {"text": "c*A^e + ...", "terms": {"e": c, ...}}
Json polynomial_json(const LaurentPolynomial& p);
LaurentPolynomial polynomial_from_json(const Json& j);

Json curve_json(const PolyCurve& c);
PolyCurve curve_from_json(const Json& j);

Json spectrum_json(const Spectrum& s);
Spectrum spectrum_from_json(const Json& j);

Json comparison_json(const Comparison& c);
Json fmeasure_json(const FMeasureResult& f, const std::map<std::string, std::string>& provenance);
Json quadrisecants_json(const QuadrisecantReport& r, const PolyCurve& curve,
                        const std::map<std::string, std::string>& provenance);
Json raw_diagram_json(const RawDiagram& d);
Json genericity_json(const GenericityReport& g);
Json height3_json(const Height3Report& h, const std::map<std::string, std::string>& provenance);

/// Canonical text: two-space indentation, sorted keys, trailing newline.
std::string dump(const Json& j);
Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Entries table: one row per class.
std::string spectrum_csv(const Spectrum& s);
/// Counts per alternation class.
std::string quadrisecants_csv(const QuadrisecantReport& r);

} // namespace knotspec
