#include "wellfn/cli.hpp"

#include "wellfn/detail/format.hpp"
#include "wellfn/reference.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace wellfn;

namespace {

struct Invocation {
    int code = 0;
    std::string out;
    std::string err;
};

Invocation invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    Invocation r;
    r.code = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> v;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

std::vector<std::string> fields(const std::string& line) {
    std::vector<std::string> v;
    std::istringstream in(line);
    for (std::string f; std::getline(in, f, ',');) v.push_back(f);
    return v;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("wellfn_test_" + name);
}

}  // namespace

TEST(Cli, EvalReference) {
    const Invocation r = invoke({"eval", "--method", "reference", "--u", "1"});
    ASSERT_EQ(r.code, cli::exit_ok) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 2u);
    EXPECT_EQ(ls[0], "u,value");
    EXPECT_EQ(ls[1], "1," + detail::format_double(e1(1.0)));
}

TEST(Cli, EvalDerivative) {
    const Invocation r = invoke({"eval", "--method", "barry", "--u", "2", "--derivative"});
    ASSERT_EQ(r.code, cli::exit_ok) << r.err;
    EXPECT_EQ(lines(r.out)[0], "u,dw_du");
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(invoke({}).code, cli::exit_usage);
    EXPECT_EQ(invoke({"frobnicate"}).code, cli::exit_usage);
    EXPECT_EQ(invoke({"eval", "--u", "1", "--method", "pade"}).code, cli::exit_usage);
    EXPECT_EQ(invoke({"eval", "--method", "proposed"}).code, cli::exit_usage);
    EXPECT_EQ(invoke({"sweep", "--target", "slope"}).code, cli::exit_usage);
}

TEST(Cli, DomainErrors) {
    const Invocation r = invoke({"eval", "--method", "proposed", "--u", "-1"});
    EXPECT_EQ(r.code, cli::exit_domain);
    EXPECT_FALSE(r.err.empty());
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(invoke({"sweep", "--method", "proposed", "--u-max", "200"}).code, cli::exit_domain);
    EXPECT_EQ(invoke({"kernel", "--t-start", "0.5"}).code, cli::exit_domain);
}

TEST(Cli, SweepFooterMatchesRows) {
    const Invocation r = invoke({"sweep", "--method", "vatankhah", "--points", "300"});
    ASSERT_EQ(r.code, cli::exit_ok) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 302u);
    EXPECT_EQ(ls[0], "u,w_ref,w_approx,pe_percent");
    const auto footer = fields(ls.back());
    ASSERT_EQ(footer.size(), 4u);
    EXPECT_EQ(footer[0], "# max_abs_pe");
    double worst = 0.0;
    std::string worst_u;
    for (std::size_t i = 1; i + 1 < ls.size(); ++i) {
        const auto f = fields(ls[i]);
        ASSERT_EQ(f.size(), 4u);
        const double pe = std::abs(*detail::parse_double(f[3]));
        if (pe > worst) {
            worst = pe;
            worst_u = f[0];
        }
    }
    EXPECT_EQ(*detail::parse_double(footer[1]), worst);
    EXPECT_EQ(footer[3], worst_u);
}

TEST(Cli, CsvValuesRoundTripExactly) {
    const Invocation r = invoke({"sweep", "--method", "proposed", "--points", "200"});
    ASSERT_EQ(r.code, cli::exit_ok);
    const auto ls = lines(r.out);
    for (std::size_t i = 1; i + 1 < ls.size(); ++i) {
        const auto f = fields(ls[i]);
        const double ref = *detail::parse_double(f[1]);
        const double approx = *detail::parse_double(f[2]);
        EXPECT_EQ(ref, e1(*detail::parse_double(f[0])));
        EXPECT_EQ(*detail::parse_double(f[3]), 100.0 * (ref - approx) / ref);
    }
}

TEST(Cli, KernelDefaultCase) {
    const Invocation r = invoke({"kernel"});
    ASSERT_EQ(r.code, cli::exit_ok) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 69u);
    EXPECT_EQ(ls[0], "r,t,u_on,u_off,U_ref,U_approx,pe_percent");
    EXPECT_NE(r.err.find("max |PE|"), std::string::npos);
}

TEST(Cli, KernelConfigFileAndOverrides) {
    const auto path = temp_file("case.cfg");
    {
        std::ofstream f(path);
        f << "# smaller case\nradii = 500, 1000\nt_end = 4\n";
    }
    const Invocation r = invoke({"kernel", "--config", path.string(), "--T", "5000"});
    ASSERT_EQ(r.code, cli::exit_ok) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 1u + 2u * 3u);
    // u_on at r = 500, t = 2 with T = 5000, S = 0.2
    EXPECT_EQ(fields(ls[1])[2], detail::format_double(500.0 * 500.0 * 0.2 / (4.0 * 5000.0 * 2.0)));
    std::filesystem::remove(path);
    EXPECT_EQ(invoke({"kernel", "--config", path.string()}).code, cli::exit_usage);
}

TEST(Cli, Table1Shape) {
    const Invocation r = invoke({"table1"});
    ASSERT_EQ(r.code, cli::exit_ok) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 5u);
    EXPECT_EQ(ls[0], "source,max_pe_w,max_pe_dw");
    EXPECT_EQ(fields(ls[4])[0], "proposed");
    for (std::size_t i = 1; i < ls.size(); ++i) {
        EXPECT_EQ(fields(ls[i]).size(), 3u);
    }
}

TEST(Cli, OutputIsByteIdenticalAcrossRuns) {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"table1"}, {"kernel", "--method", "barry"}, {"converge"}, {"bounds"},
          {"fit", "--init", "neutral"}}) {
        const Invocation a = invoke(args);
        const Invocation b = invoke(args);
        ASSERT_EQ(a.code, cli::exit_ok) << a.err;
        EXPECT_EQ(a.out, b.out) << args[0];
    }
}

TEST(Cli, ConvergeSentinelIsEmptyField) {
    const Invocation r = invoke({"converge", "--u-min", "60", "--u-max", "70", "--points", "2"});
    ASSERT_EQ(r.code, cli::exit_ok) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 3u);
    // the classical series cannot reach 1e-6 at u = 60 even in double-double
    EXPECT_EQ(fields(ls[1])[1], "");
}

TEST(Cli, FitWritesTraceAndOut) {
    const auto out = temp_file("fit.csv");
    const auto trace = temp_file("trace.csv");
    const Invocation r = invoke({"fit", "--init", "published", "--out", out.string(), "--trace", trace.string()});
    ASSERT_EQ(r.code, cli::exit_ok) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream f(out);
    std::stringstream s;
    s << f.rdbuf();
    const auto ls = lines(s.str());
    ASSERT_EQ(ls.size(), 2u);
    EXPECT_EQ(fields(ls[1])[8], "1");
    std::ifstream t(trace);
    std::string header;
    std::getline(t, header);
    EXPECT_EQ(header, "iteration,accepted,lambda,residual_norm,a1,a2,a3,a4,a5");
    std::filesystem::remove(out);
    std::filesystem::remove(trace);
}
