#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "spdc/errors.hpp"

namespace spdc {

enum class Axis { X = 0, Y = 1, Z = 2 };

const char* axis_name(Axis axis);

// One resonance term of a Sellmeier expansion. Two styles are common in the
// KTP-family literature and both are supported in a single representation:
//   Ratio: num * lam^2 / (lam^2 - pole)
//   Pole : num / (lam^2 - pole)
// with lam the vacuum wavelength in micrometers and pole in micrometers^2.
struct SellmeierTerm {
    enum class Style { Ratio, Pole };
    Style style = Style::Ratio;
    double num = 0.0;   // dimensionless (Ratio) or um^2 (Pole)
    double pole = 0.0;  // um^2
};

// n^2(lam) = constant_term + sum(terms) - infrared_term * lam^2, lam in um.
struct SellmeierForm {
    double constant_term = 0.0;
    std::vector<SellmeierTerm> terms;
    double infrared_term = 0.0;

    double n_squared(double lam_um) const;
    double n(double lam_um) const;
    // Analytic d(n^2)/dlam, um^-1.
    double dn2_dlambda(double lam_um) const;
};

// A named crystal: per-axis dispersion, transparency validity window, and metadata.
// d_eff is stored as metadata only and never enters a calculation.
struct CrystalRecord {
    std::string name;
    std::string composition;
    std::array<SellmeierForm, 3> axes;  // indexed by Axis
    double validity_lo_um = 0.0;
    double validity_hi_um = 0.0;
    double d_eff_pm_per_V = 0.0;
    std::string source;

    const SellmeierForm& axis(Axis a) const { return axes[static_cast<int>(a)]; }
    bool in_range(double lam_um) const {
        return lam_um >= validity_lo_um && lam_um <= validity_hi_um;
    }
    // Throws RangeError naming the record if lam is outside the validity window.
    void check_range(double lam_um) const;
};

struct CrystalSummary {
    std::string name;
    std::string composition;
    double d_eff_pm_per_V;
    double validity_lo_um;
    double validity_hi_um;
};

// Immutable collection of crystal records with case-insensitive lookup.
class Registry {
public:
    explicit Registry(std::vector<CrystalRecord> records);

    // Case-insensitive; throws ValidationError with a suggestion list on miss.
    const CrystalRecord& get(std::string_view name) const;
    bool contains(std::string_view name) const;
    std::size_t size() const { return records_.size(); }
    // Records in alphabetical order of name.
    const std::vector<CrystalRecord>& records() const { return records_; }

private:
    std::vector<CrystalRecord> records_;          // sorted by upper-cased name
    std::map<std::string, std::size_t> by_name_;  // upper-cased name -> index
};

// Load and validate a registry file (JSON; see data/crystals.json for the schema).
// Throws ParseError on malformed input and ValidationError on invariant violations;
// messages name the offending record and field.
Registry load_registry(const std::string& path);

// Validate a single record (all invariants); throws ValidationError.
void validate_record(const CrystalRecord& record);

// n(lam) on the requested axis; throws RangeError outside the validity window.
double refractive_index(const CrystalRecord& record, Axis axis, double lam_um);

// Alphabetical one-row-per-crystal summary.
std::vector<CrystalSummary> list_crystals(const Registry& registry);

}  // namespace spdc
