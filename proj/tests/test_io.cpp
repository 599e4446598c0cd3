#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "vfmcal/io.hpp"
#include "vfmcal/runner.hpp"

using namespace vfmcal;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("vfmcal_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int n = 0;
        return n;
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

Dataset sample_dataset() {
    ConstructedOptions opts;
    return generate_constructed_case(4, opts);
}

std::string read_first_line(const std::string& path) {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    return line;
}

long count_lines(const std::string& path) {
    std::ifstream in(path);
    std::string line;
    long n = 0;
    while (std::getline(in, line)) ++n;
    return n;
}

}  // namespace

TEST_CASE("dataset round-trips through the CSV schema") {
    TempDir dir;
    const Dataset ds = sample_dataset();
    write_dataset(ds, dir.file("f.csv"), dir.file("o.csv"), dir.file("t.csv"));
    const Dataset back = read_dataset(dir.file("f.csv"), dir.file("o.csv"), dir.file("t.csv"));

    CHECK(back.wells == ds.wells);
    CHECK(back.steps == ds.steps);
    for (int t = 0; t < ds.steps; ++t) {
        for (int j = 0; j < ds.wells; ++j) {
            CHECK(back.feature(t, j).u == ds.feature(t, j).u);
            CHECK(back.feature(t, j).p1 == ds.feature(t, j).p1);
            CHECK(back.feature(t, j).p2 == ds.feature(t, j).p2);
            CHECK(back.feature(t, j).T == ds.feature(t, j).T);
            CHECK(back.is_active(t, j) == ds.is_active(t, j));
            const auto& a = back.truth[static_cast<std::size_t>(t) * ds.wells + j];
            const auto& b = ds.truth[static_cast<std::size_t>(t) * ds.wells + j];
            CHECK(a.tuning == b.tuning);
            CHECK(a.gas_fraction == b.gas_fraction);
            CHECK(a.oil_factor == b.oil_factor);
        }
        CHECK(back.observations[t].rates == ds.observations[t].rates);
        CHECK(back.observations[t].kind == ds.observations[t].kind);
        CHECK(back.observations[t].active == ds.observations[t].active);
    }
}

TEST_CASE("golden headers and row counts") {
    TempDir dir;
    const Dataset ds = sample_dataset();
    write_dataset(ds, dir.file("f.csv"), dir.file("o.csv"), dir.file("t.csv"));
    CHECK(read_first_line(dir.file("f.csv")) == "t,well_id,u,p1,p2,T,active");
    CHECK(read_first_line(dir.file("o.csv")) == "t,y_gas,y_oil,y_water,kind,tested_well");
    CHECK(read_first_line(dir.file("t.csv")) == "t,well_id,beta,gamma,lambda");
    CHECK(count_lines(dir.file("f.csv")) == 1 + 50 * 3);
    CHECK(count_lines(dir.file("o.csv")) == 1 + 50);
    CHECK(count_lines(dir.file("t.csv")) == 1 + 50 * 3);
}

TEST_CASE("schema violations carry file and line information") {
    TempDir dir;

    SUBCASE("missing column is named") {
        std::ofstream(dir.file("f.csv")) << "t,well_id,u,p1,p2,active\n";
        try {
            read_dataset(dir.file("f.csv"), dir.file("o.csv"));
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            const std::string msg = e.what();
            CHECK(msg.find("missing column 'T'") != std::string::npos);
        }
    }

    SUBCASE("bad number reports the line") {
        std::ofstream(dir.file("f.csv"))
            << "t,well_id,u,p1,p2,T,active\n0,0,0.5,1e6,bogus,330,1\n";
        try {
            read_dataset(dir.file("f.csv"), dir.file("o.csv"));
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            const std::string msg = e.what();
            CHECK(msg.find(":2:") != std::string::npos);
            CHECK(msg.find("bogus") != std::string::npos);
        }
    }

    SUBCASE("welltest with two active wells is inconsistent") {
        std::ofstream(dir.file("f.csv")) << "t,well_id,u,p1,p2,T,active\n"
                                            "0,0,0.5,1e6,7e5,330,1\n"
                                            "0,1,0.5,1e6,7e5,330,1\n";
        std::ofstream(dir.file("o.csv")) << "t,y_gas,y_oil,y_water,kind,tested_well\n"
                                            "0,1,2,3,welltest,0\n";
        CHECK_THROWS_AS(read_dataset(dir.file("f.csv"), dir.file("o.csv")), ParseError);
    }

    SUBCASE("unknown kind is rejected") {
        std::ofstream(dir.file("f.csv")) << "t,well_id,u,p1,p2,T,active\n"
                                            "0,0,0.5,1e6,7e5,330,1\n";
        std::ofstream(dir.file("o.csv")) << "t,y_gas,y_oil,y_water,kind,tested_well\n"
                                            "0,1,2,3,shutdown,\n";
        CHECK_THROWS_AS(read_dataset(dir.file("f.csv"), dir.file("o.csv")), ParseError);
    }
}

TEST_CASE("summaries and ESS round-trip") {
    TempDir dir;
    std::vector<PosteriorSummary> summaries;
    for (int t = 0; t < 4; ++t) {
        PosteriorSummary s;
        s.t = t;
        s.ess = 80.0 + t;
        s.rel_ess = s.ess / 100.0;
        const int dim = 2 * kParamsPerWell;
        s.mean = Eigen::VectorXd::LinSpaced(dim, 0.1 + t, 1.0 + t);
        s.p5 = s.mean.array() - 0.05;
        s.p25 = s.mean.array() - 0.02;
        s.p75 = s.mean.array() + 0.02;
        s.p95 = s.mean.array() + 0.05;
        summaries.push_back(s);
    }
    write_summaries_csv(dir.file("s.csv"), summaries, 2);
    write_ess_csv(dir.file("e.csv"), summaries);
    CHECK(read_first_line(dir.file("s.csv")) == "t,well_id,parameter,mean,p5,p25,p75,p95");
    CHECK(read_first_line(dir.file("e.csv")) == "t,ess,rel_ess");
    CHECK(count_lines(dir.file("s.csv")) == 1 + 4 * 2 * 3);

    int wells = 0;
    const auto back = read_summaries_csv(dir.file("s.csv"), &wells);
    CHECK(wells == 2);
    REQUIRE(back.size() == 4);
    for (int t = 0; t < 4; ++t) {
        CHECK(back[t].mean == summaries[t].mean);
        CHECK(back[t].p5 == summaries[t].p5);
        CHECK(back[t].p95 == summaries[t].p95);
    }
    const auto trace = read_rel_ess_csv(dir.file("e.csv"));
    REQUIRE(trace.size() == 4);
    CHECK(trace[0] == doctest::Approx(0.8));
}

TEST_CASE("report writers emit the table rows") {
    TempDir dir;
    ValidationError e;
    e.t = 5;
    e.well = 0;
    e.tuning = 0.1;
    e.gas_fraction = 0.02;
    e.oil_factor = 0.05;
    const EvaluationReport report = mad_report({e}, {0.5}, 50, 1, 50);
    write_report_json(dir.file("r.json"), report);
    write_report_text(dir.file("r.txt"), report);

    std::ifstream txt(dir.file("r.txt"));
    std::string content((std::istreambuf_iterator<char>(txt)),
                        std::istreambuf_iterator<char>());
    CHECK(content.find("Tuning factor") != std::string::npos);
    CHECK(content.find("Gas fraction") != std::string::npos);
    CHECK(content.find("Oil factor") != std::string::npos);
    CHECK(content.find("Rel. ESS") != std::string::npos);

    std::ifstream js(dir.file("r.json"));
    std::string jcontent((std::istreambuf_iterator<char>(js)),
                         std::istreambuf_iterator<char>());
    CHECK(jcontent.find("\"mean_rel_ess\"") != std::string::npos);
    CHECK(jcontent.find("\"aggregate\"") != std::string::npos);
}

TEST_CASE("run on a small dataset writes every output deterministically") {
    TempDir data_dir;
    const Dataset ds = sample_dataset();
    write_dataset(ds, data_dir.file("features.csv"), data_dir.file("observations.csv"),
                  data_dir.file("truth.csv"));

    RunConfig cfg;
    cfg.features_path = data_dir.file("features.csv");
    cfg.observations_path = data_dir.file("observations.csv");
    cfg.truth_path = data_dir.file("truth.csv");
    cfg.filter.n_particles = 300;
    cfg.filter.seed = 5;

    TempDir out_a, out_b;
    cfg.output_dir = out_a.path.string();
    REQUIRE(run(cfg) == 0);
    cfg.output_dir = out_b.path.string();
    REQUIRE(run(cfg) == 0);

    for (const char* name :
         {"summaries.csv", "ess.csv", "report.json", "report.txt", "manifest.json"}) {
        std::ifstream fa(out_a.file(name)), fb(out_b.file(name));
        REQUIRE(fa.good());
        REQUIRE(fb.good());
        const std::string a((std::istreambuf_iterator<char>(fa)),
                            std::istreambuf_iterator<char>());
        const std::string b((std::istreambuf_iterator<char>(fb)),
                            std::istreambuf_iterator<char>());
        CHECK(a == b);
        CHECK_FALSE(a.empty());
    }

    SUBCASE("welltests excluded from inference are still evaluated") {
        cfg.include_welltests = false;
        TempDir out_c;
        cfg.output_dir = out_c.path.string();
        REQUIRE(run(cfg) == 0);
        std::ifstream js(out_c.file("report.json"));
        const std::string content((std::istreambuf_iterator<char>(js)),
                                  std::istreambuf_iterator<char>());
        // the single constructed well test still appears in the report
        CHECK(content.find("\"tests\"") != std::string::npos);
        CHECK(count_lines(out_c.file("summaries.csv")) == 1 + 50 * 3 * 3);
    }
}
