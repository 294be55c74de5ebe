#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "convspec/io.hpp"
#include "test_support.hpp"

namespace convspec {
namespace {

TEST(KernelCsv, RoundTripIsExact) {
    const auto f = testing::random_smooth(2, 33);
    const auto g = io::kernel_from_csv(io::kernel_to_csv(f));
    ASSERT_EQ(g.size(), f.size());
    for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(f[i], g[i]);
}

TEST(KernelCsv, Malformed) {
    EXPECT_THROW(io::kernel_from_csv(""), IoError);
    EXPECT_THROW(io::kernel_from_csv("x,y\n0,1\n"), IoError);
    EXPECT_THROW(io::kernel_from_csv("x,re,im\n0,1,0\n1.5707963267948966,abc,0\n"), IoError);
    EXPECT_THROW(io::kernel_from_csv("x,re,im\n0,1,0\n"), IoError);
    EXPECT_THROW(io::kernel_from_csv("x,re,im\n0,1,0\n1.0,1,0\n3.141592653589793,1,0\n"), IoError);
    EXPECT_NO_THROW(io::kernel_from_csv("x,re,im\r\n0,1,0\r\n1.5707963267948966,1,0\r\n3.141592653589793,1,0\r\n"));
}

TEST(SpectrumJson, RoundTrip) {
    const Spectrum s({cplx(1.5, -0.25), 4.0, cplx(9.1, 1e-3)});
    const auto t = io::spectrum_from_json(io::json::parse(io::spectrum_to_json(s).dump()));
    ASSERT_EQ(t.head_size(), 3u);
    for (std::size_t k = 1; k <= 4; ++k) EXPECT_EQ(s(k), t(k));
}

TEST(SpectrumJson, SchemaViolations) {
    using io::json;
    EXPECT_THROW(io::spectrum_from_json(json::parse("[1,2]")), ValidationError);
    EXPECT_THROW(io::spectrum_from_json(json::parse(R"({"K":0,"lambda":[]})")), ValidationError);
    EXPECT_THROW(io::spectrum_from_json(json::parse(R"({"K":2,"lambda":[[1,0]]})")), ValidationError);
    EXPECT_THROW(io::spectrum_from_json(json::parse(R"({"K":1,"lambda":[[1]]})")), ValidationError);
    EXPECT_THROW(io::spectrum_from_json(json::parse(R"({"K":1,"lambda":[["a",0]]})")), ValidationError);
}

TEST(Files, MissingAndUnparsable) {
    const auto dir = std::filesystem::temp_directory_path() / "convspec_test_io";
    std::filesystem::create_directories(dir);
    EXPECT_THROW(io::read_kernel((dir / "missing.csv").string()), IoError);
    const auto bad = (dir / "bad.json").string();
    io::write_text(bad, "{not json");
    EXPECT_THROW(io::read_spectrum(bad), IoError);
    const auto good = (dir / "good.json").string();
    io::write_spectrum(good, Spectrum::unperturbed(3));
    EXPECT_EQ(io::read_spectrum(good)(3), cplx(9.0));
    std::filesystem::remove_all(dir);
}

TEST(Reports, InfinityAndEmptyRatios) {
    EXPECT_EQ(io::number_or_inf(INFINITY), "inf");
    EXPECT_EQ(io::number_or_inf(1.5), 1.5);
    StabilityReport r;
    const auto j = io::report_to_json(r);
    EXPECT_TRUE(j["ratios"]["M_l2w_per_Lambda"].is_null());
    const auto csv = io::ensemble_to_csv({{7, 0.5, r}});
    EXPECT_EQ(csv.substr(0, 11), "seed,delta,");
    EXPECT_NE(csv.find("\n7,0.5,0,"), std::string::npos);
}

}  // namespace
}  // namespace convspec
