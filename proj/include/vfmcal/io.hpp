#ifndef VFMCAL_IO_HPP
#define VFMCAL_IO_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "vfmcal/eval.hpp"
#include "vfmcal/particle_filter.hpp"
#include "vfmcal/synth.hpp"

namespace vfmcal {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& path, int line, const std::string& what)
        : std::runtime_error(path + ":" + std::to_string(line) + ": " + what) {}
};

// Dataset files are plain CSV.
//   features:     t,well_id,u,p1,p2,T,active
//   observations: t,y_gas,y_oil,y_water,kind,tested_well
//   truth:        t,well_id,beta,gamma,lambda
// kind is production or welltest; tested_well is empty except on welltest
// rows. A well-test row must have exactly one active well, the tested one.
Dataset read_dataset(const std::string& features_path, const std::string& observations_path,
                     const std::string& truth_path = "");
void write_dataset(const Dataset& ds, const std::string& features_path,
                   const std::string& observations_path, const std::string& truth_path = "");

// Per-step posterior summaries, one row per (t, well, parameter).
//   t,well_id,parameter,mean,p5,p25,p75,p95
void write_summaries_csv(const std::string& path, const std::vector<PosteriorSummary>& summaries,
                         int wells);
// Reads them back; wells is inferred. ESS columns live in the ESS trace
// file, so rel_ess of the returned summaries is zero.
std::vector<PosteriorSummary> read_summaries_csv(const std::string& path, int* wells_out = nullptr);

//   t,ess,rel_ess
void write_ess_csv(const std::string& path, const std::vector<PosteriorSummary>& summaries);
std::vector<double> read_rel_ess_csv(const std::string& path);

void write_report_json(const std::string& path, const EvaluationReport& report);
// Plain-text table: one row each for tuning factor, gas fraction, oil
// factor, and relative ESS.
void write_report_text(const std::string& path, const EvaluationReport& report);

// Round-trip exact decimal formatting used by every writer.
std::string format_double(double v);

}  // namespace vfmcal

#endif
