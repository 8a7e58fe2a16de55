#ifndef ELLH_CORPUS_HPP
#define ELLH_CORPUS_HPP

#include <array>
#include <string>
#include <vector>

#include "ellh/lang_check.hpp"

namespace ellh {

struct CurveRecord {
    std::string label;
    std::array<Int, 5> a;  // a1, a2, a3, a4, a6
    std::vector<RationalPoint> points;
    int line_no = 0;
};

/// One curve per line: "a1,a2,a3,a4,a6[;label[;P=x,y[;P=...]]]" with '#'
/// comments; point coordinates are integers or fractions n/d.
std::vector<CurveRecord> parse_corpus(const std::string& path);
std::vector<CurveRecord> parse_corpus_text(const std::string& text);

struct PipelineConfig {
    unsigned precision_bits = kDefaultPrecisionBits;
    int oracle_doublings = 12;
    Real epsilon = Real(1) / 2;
    Real c1 = Real(2);
    unsigned workers = 0;  // 0 = hardware concurrency, capped
};

struct PointReport {
    HeightReport height;
    SplitProfile profile;
    SDecomposition s_decomposition;
    CaseClassification classification;
    TheoremVerification theorem;
    bool prop1_floor_ok = true;   // exact -N_v/24 threshold at finite places
    bool bp_ok = true;
};

struct CurveReport {
    CurveRecord record;
    bool ok = false;          // record processed without error
    std::string error;
    std::string minimal_model;
    Invariants invariants;    // of the minimal model
    Int disc_min;
    std::vector<LocalReductionData> reductions;
    Int N_E;
    bool semistable = false;
    Real h_F;
    bool falt_bound_recomputed_ok = true;
    Real tau_im;
    std::vector<PointReport> points;
    SlopeBudget budget;       // at the (H0) floor for this N_E, d = 1
    bool budget_at_floor = true;
    bool violation = false;   // some paper inequality failed
};

std::vector<CurveReport> run_pipeline(const std::vector<CurveRecord>& records,
                                      const PipelineConfig& config);

std::string emit_report(const std::vector<CurveReport>& reports, const std::string& format,
                        const PipelineConfig& config);

/// 0 = success, 1 = some inequality violated, 2 = input error handled upstream.
int pipeline_exit_code(const std::vector<CurveReport>& reports);

} // namespace ellh

#endif
