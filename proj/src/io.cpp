#include "vfmcal/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace vfmcal {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

class CsvReader {
public:
    CsvReader(const std::string& path, const std::vector<std::string>& columns) : path_(path) {
        in_.open(path);
        if (!in_) {
            throw std::runtime_error("cannot open " + path);
        }
        std::string header;
        if (!std::getline(in_, header)) {
            throw ParseError(path, 1, "empty file");
        }
        if (!header.empty() && header.back() == '\r') header.pop_back();
        const auto names = split_csv(header);
        for (const std::string& want : columns) {
            bool found = false;
            for (std::size_t i = 0; i < names.size(); ++i) {
                if (names[i] == want) {
                    index_.push_back(i);
                    found = true;
                    break;
                }
            }
            if (!found) {
                throw ParseError(path, 1, "missing column '" + want + "'");
            }
        }
        width_ = names.size();
        line_no_ = 1;
    }

    // Returns false at end of file; otherwise fills the requested columns.
    bool next(std::vector<std::string>& out) {
        std::string line;
        do {
            if (!std::getline(in_, line)) return false;
            ++line_no_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
        } while (line.empty());
        const auto fields = split_csv(line);
        if (fields.size() != width_) {
            throw ParseError(path_, line_no_, "expected " + std::to_string(width_) +
                                                  " fields, got " + std::to_string(fields.size()));
        }
        out.clear();
        for (std::size_t i : index_) out.push_back(fields[i]);
        return true;
    }

    int line_no() const { return line_no_; }
    const std::string& path() const { return path_; }

    double to_double(const std::string& s) const {
        double v{};
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
            throw ParseError(path_, line_no_, "bad number '" + s + "'");
        }
        return v;
    }

    int to_int(const std::string& s) const {
        int v{};
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
            throw ParseError(path_, line_no_, "bad integer '" + s + "'");
        }
        return v;
    }

private:
    std::string path_;
    std::ifstream in_;
    std::vector<std::size_t> index_;
    std::size_t width_ = 0;
    int line_no_ = 0;
};

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    return out;
}

}  // namespace

Dataset read_dataset(const std::string& features_path, const std::string& observations_path,
                     const std::string& truth_path) {
    struct FeatureRow {
        WellFeatures x;
        bool active;
    };
    std::map<std::pair<int, int>, FeatureRow> rows;
    int max_t = -1, max_well = -1;
    {
        CsvReader reader(features_path, {"t", "well_id", "u", "p1", "p2", "T", "active"});
        std::vector<std::string> f;
        while (reader.next(f)) {
            const int t = reader.to_int(f[0]);
            const int j = reader.to_int(f[1]);
            if (t < 0 || j < 0) {
                throw ParseError(features_path, reader.line_no(), "negative index");
            }
            FeatureRow row;
            row.x.u = reader.to_double(f[2]);
            row.x.p1 = reader.to_double(f[3]);
            row.x.p2 = reader.to_double(f[4]);
            row.x.T = reader.to_double(f[5]);
            const int act = reader.to_int(f[6]);
            if (act != 0 && act != 1) {
                throw ParseError(features_path, reader.line_no(), "active must be 0 or 1");
            }
            row.active = act == 1;
            if (!rows.emplace(std::make_pair(t, j), row).second) {
                throw ParseError(features_path, reader.line_no(), "duplicate (t, well) row");
            }
            max_t = std::max(max_t, t);
            max_well = std::max(max_well, j);
        }
    }
    if (max_t < 0) {
        throw ParseError(features_path, 1, "no feature rows");
    }

    Dataset ds;
    ds.steps = max_t + 1;
    ds.wells = max_well + 1;
    ds.features.resize(static_cast<std::size_t>(ds.steps) * ds.wells);
    ds.active.assign(ds.features.size(), 0);
    for (int t = 0; t < ds.steps; ++t) {
        for (int j = 0; j < ds.wells; ++j) {
            const auto it = rows.find({t, j});
            if (it == rows.end()) {
                throw ParseError(features_path, 1,
                                 "missing row for t=" + std::to_string(t) +
                                     " well=" + std::to_string(j));
            }
            const std::size_t idx = static_cast<std::size_t>(t) * ds.wells + j;
            ds.features[idx] = it->second.x;
            ds.active[idx] = it->second.active ? 1 : 0;
        }
    }

    {
        CsvReader reader(observations_path,
                         {"t", "y_gas", "y_oil", "y_water", "kind", "tested_well"});
        std::vector<std::string> f;
        std::vector<bool> seen(ds.steps, false);
        ds.observations.resize(ds.steps);
        while (reader.next(f)) {
            const int t = reader.to_int(f[0]);
            if (t < 0 || t >= ds.steps) {
                throw ParseError(observations_path, reader.line_no(),
                                 "observation t outside the feature horizon");
            }
            if (seen[t]) {
                throw ParseError(observations_path, reader.line_no(), "duplicate observation");
            }
            seen[t] = true;
            Observation& obs = ds.observations[t];
            obs.t = t;
            obs.rates = {reader.to_double(f[1]), reader.to_double(f[2]), reader.to_double(f[3])};
            if ((obs.rates.array() < 0.0).any()) {
                throw ParseError(observations_path, reader.line_no(), "negative rate");
            }
            if (f[4] == "production") {
                obs.kind = ObservationKind::production;
            } else if (f[4] == "welltest") {
                obs.kind = ObservationKind::welltest;
            } else {
                throw ParseError(observations_path, reader.line_no(),
                                 "kind must be production or welltest, got '" + f[4] + "'");
            }
            for (int j = 0; j < ds.wells; ++j) {
                if (ds.is_active(t, j)) obs.active.push_back(j);
            }
            if (obs.kind == ObservationKind::welltest) {
                if (f[5].empty()) {
                    throw ParseError(observations_path, reader.line_no(),
                                     "welltest row lacks tested_well");
                }
                const int tested = reader.to_int(f[5]);
                if (obs.active.size() != 1 || obs.active.front() != tested) {
                    throw ParseError(observations_path, reader.line_no(),
                                     "welltest requires exactly one active well, the tested one");
                }
            } else if (!f[5].empty()) {
                throw ParseError(observations_path, reader.line_no(),
                                 "production row carries tested_well");
            }
        }
        for (int t = 0; t < ds.steps; ++t) {
            if (!seen[t]) {
                throw ParseError(observations_path, 1,
                                 "missing observation for t=" + std::to_string(t));
            }
        }
    }

    if (!truth_path.empty()) {
        CsvReader reader(truth_path, {"t", "well_id", "beta", "gamma", "lambda"});
        std::vector<std::string> f;
        ds.truth.resize(ds.features.size());
        std::vector<bool> seen(ds.features.size(), false);
        while (reader.next(f)) {
            const int t = reader.to_int(f[0]);
            const int j = reader.to_int(f[1]);
            if (t < 0 || t >= ds.steps || j < 0 || j >= ds.wells) {
                throw ParseError(truth_path, reader.line_no(), "truth row outside the dataset");
            }
            const std::size_t idx = static_cast<std::size_t>(t) * ds.wells + j;
            ds.truth[idx] = {reader.to_double(f[2]), reader.to_double(f[3]),
                             reader.to_double(f[4])};
            seen[idx] = true;
        }
        for (std::size_t i = 0; i < seen.size(); ++i) {
            if (!seen[i]) {
                throw ParseError(truth_path, 1, "incomplete truth table");
            }
        }
    }
    return ds;
}

void write_dataset(const Dataset& ds, const std::string& features_path,
                   const std::string& observations_path, const std::string& truth_path) {
    {
        auto out = open_out(features_path);
        out << "t,well_id,u,p1,p2,T,active\n";
        for (int t = 0; t < ds.steps; ++t) {
            for (int j = 0; j < ds.wells; ++j) {
                const WellFeatures& x = ds.feature(t, j);
                out << t << ',' << j << ',' << format_double(x.u) << ',' << format_double(x.p1)
                    << ',' << format_double(x.p2) << ',' << format_double(x.T) << ','
                    << (ds.is_active(t, j) ? 1 : 0) << '\n';
            }
        }
    }
    {
        auto out = open_out(observations_path);
        out << "t,y_gas,y_oil,y_water,kind,tested_well\n";
        for (const Observation& obs : ds.observations) {
            out << obs.t << ',' << format_double(obs.rates[0]) << ','
                << format_double(obs.rates[1]) << ',' << format_double(obs.rates[2]) << ',';
            if (obs.kind == ObservationKind::welltest) {
                out << "welltest," << obs.active.front();
            } else {
                out << "production,";
            }
            out << '\n';
        }
    }
    if (!truth_path.empty() && ds.has_truth()) {
        auto out = open_out(truth_path);
        out << "t,well_id,beta,gamma,lambda\n";
        for (int t = 0; t < ds.steps; ++t) {
            for (int j = 0; j < ds.wells; ++j) {
                const WellParameters& wp = ds.truth[static_cast<std::size_t>(t) * ds.wells + j];
                out << t << ',' << j << ',' << format_double(wp.tuning) << ','
                    << format_double(wp.gas_fraction) << ',' << format_double(wp.oil_factor)
                    << '\n';
            }
        }
    }
}

namespace {
const char* param_name(int param) {
    switch (param) {
        case kTuning: return "beta";
        case kGasFraction: return "gamma";
        default: return "lambda";
    }
}
}  // namespace

void write_summaries_csv(const std::string& path, const std::vector<PosteriorSummary>& summaries,
                         int wells) {
    auto out = open_out(path);
    out << "t,well_id,parameter,mean,p5,p25,p75,p95\n";
    for (const PosteriorSummary& s : summaries) {
        for (int j = 0; j < wells; ++j) {
            for (int param = 0; param < kParamsPerWell; ++param) {
                const int d = component_index(j, param);
                out << s.t << ',' << j << ',' << param_name(param) << ','
                    << format_double(s.mean[d]) << ',' << format_double(s.p5[d]) << ','
                    << format_double(s.p25[d]) << ',' << format_double(s.p75[d]) << ','
                    << format_double(s.p95[d]) << '\n';
            }
        }
    }
}

std::vector<PosteriorSummary> read_summaries_csv(const std::string& path, int* wells_out) {
    CsvReader reader(path, {"t", "well_id", "parameter", "mean", "p5", "p25", "p75", "p95"});
    struct Cell {
        double mean, p5, p25, p75, p95;
    };
    std::map<std::pair<int, int>, Cell> cells;  // (t, component) -> stats
    int max_t = -1, max_well = -1;
    std::vector<std::string> f;
    while (reader.next(f)) {
        const int t = reader.to_int(f[0]);
        const int j = reader.to_int(f[1]);
        int param;
        if (f[2] == "beta") {
            param = kTuning;
        } else if (f[2] == "gamma") {
            param = kGasFraction;
        } else if (f[2] == "lambda") {
            param = kOilFactor;
        } else {
            throw ParseError(path, reader.line_no(), "unknown parameter '" + f[2] + "'");
        }
        Cell cell{reader.to_double(f[3]), reader.to_double(f[4]), reader.to_double(f[5]),
                  reader.to_double(f[6]), reader.to_double(f[7])};
        cells[{t, component_index(j, param)}] = cell;
        max_t = std::max(max_t, t);
        max_well = std::max(max_well, j);
    }
    if (max_t < 0) {
        throw ParseError(path, 1, "no summary rows");
    }
    const int wells = max_well + 1;
    const int dim = wells * kParamsPerWell;
    std::vector<PosteriorSummary> summaries(max_t + 1);
    for (int t = 0; t <= max_t; ++t) {
        PosteriorSummary& s = summaries[t];
        s.t = t;
        s.mean.setZero(dim);
        s.p5.setZero(dim);
        s.p25.setZero(dim);
        s.p75.setZero(dim);
        s.p95.setZero(dim);
        for (int d = 0; d < dim; ++d) {
            const auto it = cells.find({t, d});
            if (it == cells.end()) {
                throw ParseError(path, 1, "incomplete summary grid at t=" + std::to_string(t));
            }
            s.mean[d] = it->second.mean;
            s.p5[d] = it->second.p5;
            s.p25[d] = it->second.p25;
            s.p75[d] = it->second.p75;
            s.p95[d] = it->second.p95;
        }
    }
    if (wells_out) *wells_out = wells;
    return summaries;
}

void write_ess_csv(const std::string& path, const std::vector<PosteriorSummary>& summaries) {
    auto out = open_out(path);
    out << "t,ess,rel_ess\n";
    for (const PosteriorSummary& s : summaries) {
        out << s.t << ',' << format_double(s.ess) << ',' << format_double(s.rel_ess) << '\n';
    }
}

std::vector<double> read_rel_ess_csv(const std::string& path) {
    CsvReader reader(path, {"t", "rel_ess"});
    std::vector<double> trace;
    std::vector<std::string> f;
    while (reader.next(f)) {
        trace.push_back(reader.to_double(f[1]));
    }
    return trace;
}

void write_report_json(const std::string& path, const EvaluationReport& report) {
    nlohmann::json j;
    const auto stats_json = [](const ParamStats& s) {
        return nlohmann::json{{"mad", s.mad}, {"n_used", s.n_used}, {"n_undefined", s.n_undefined}};
    };
    j["aggregate"] = {{"tuning", stats_json(report.aggregate[kTuning])},
                      {"gas_fraction", stats_json(report.aggregate[kGasFraction])},
                      {"oil_factor", stats_json(report.aggregate[kOilFactor])}};
    j["mean_rel_ess"] = report.mean_rel_ess;
    j["n_skipped"] = report.n_skipped;
    j["bucket_days"] = report.bucket_days;
    j["per_well"] = nlohmann::json::array();
    for (std::size_t w = 0; w < report.per_well.size(); ++w) {
        j["per_well"].push_back({{"well", w},
                                 {"tuning", stats_json(report.per_well[w][kTuning])},
                                 {"gas_fraction", stats_json(report.per_well[w][kGasFraction])},
                                 {"oil_factor", stats_json(report.per_well[w][kOilFactor])}});
    }
    const auto bucket_json = [](const BucketStats& b) {
        return nlohmann::json{{"count", b.count}, {"mean", b.mean},     {"min", b.min},
                              {"p25", b.p25},     {"median", b.median}, {"p75", b.p75},
                              {"max", b.max}};
    };
    j["buckets"] = nlohmann::json::array();
    for (const auto& bucket : report.buckets) {
        j["buckets"].push_back({{"bucket", bucket[kTuning].bucket},
                                {"tuning", bucket_json(bucket[kTuning])},
                                {"gas_fraction", bucket_json(bucket[kGasFraction])},
                                {"oil_factor", bucket_json(bucket[kOilFactor])}});
    }
    j["tests"] = nlohmann::json::array();
    for (const ValidationError& e : report.errors) {
        nlohmann::json row{{"t", e.t}, {"well", e.well}};
        row["tuning_error"] = e.tuning ? nlohmann::json(*e.tuning) : nlohmann::json();
        row["gas_fraction_error"] =
            e.gas_fraction ? nlohmann::json(*e.gas_fraction) : nlohmann::json();
        row["oil_factor_error"] = e.oil_factor ? nlohmann::json(*e.oil_factor) : nlohmann::json();
        j["tests"].push_back(row);
    }
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

void write_report_text(const std::string& path, const EvaluationReport& report) {
    auto out = open_out(path);
    char buf[128];
    out << "Metric           MAD      n   undefined\n";
    const auto row = [&](const char* label, const ParamStats& s) {
        std::snprintf(buf, sizeof(buf), "%-14s %7.3f %6d %6d\n", label, s.mad, s.n_used,
                      s.n_undefined);
        out << buf;
    };
    row("Tuning factor", report.aggregate[kTuning]);
    row("Gas fraction", report.aggregate[kGasFraction]);
    row("Oil factor", report.aggregate[kOilFactor]);
    std::snprintf(buf, sizeof(buf), "%-14s %7.3f\n", "Rel. ESS", report.mean_rel_ess);
    out << buf;
}

}  // namespace vfmcal
