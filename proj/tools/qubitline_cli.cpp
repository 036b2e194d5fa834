// Command-line front end: validate | region | pc | capacity | order | sweep.
// Exit codes: 0 success, 2 validation failure (parse / non-CP), 1 internal.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <qubitline/qubitline.hpp>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitValidation = 2;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw qubitline::parse_error("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

qubitline::ChannelSpec load_channel(const std::string& path) {
    return qubitline::parse_channel_spec(slurp(path));
}

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_validate(const std::string& spec_path, bool allow_noncp) {
    qubitline::ChannelSpec spec = load_channel(spec_path);
    qubitline::ChoiReport choi = qubitline::choi_cptp_check(spec.channel);
    qubitline::DiagonalFrame frame = qubitline::diagonalize(spec.channel);

    nlohmann::json j;
    if (!spec.name.empty()) j["name"] = spec.name;
    j["is_cp"] = choi.is_cp;
    j["min_choi_eigenvalue"] = choi.min_eigenvalue;
    j["T"] = qubitline::to_json(spec.channel.t);
    j["b"] = qubitline::to_json(spec.channel.b);
    j["frame"] = {{"u", qubitline::to_json(frame.u)},
                  {"v", qubitline::to_json(frame.v)},
                  {"s", qubitline::to_json(frame.s)},
                  {"xi", qubitline::to_json(frame.xi)}};
    if (allow_noncp) j["allow_noncp"] = true;
    print_json(j);

    if (!choi.is_cp && !allow_noncp) return kExitValidation;
    return kExitOk;
}

int cmd_region(const std::string& spec_path, std::size_t samples, const std::string& out) {
    qubitline::ChannelSpec spec = load_channel(spec_path);
    qubitline::Region region = qubitline::generate_region(spec.channel, samples);

    std::ofstream os(out, std::ios::binary);
    if (!os) throw qubitline::error("cannot open output file: " + out);
    qubitline::write_region_csv(os, region);

    std::string border_path = out + ".border.csv";
    std::ofstream bs(border_path, std::ios::binary);
    if (!bs) throw qubitline::error("cannot open output file: " + border_path);
    qubitline::write_border_csv(bs, region);

    nlohmann::json j;
    if (!spec.name.empty()) j["name"] = spec.name;
    j["samples"] = region.samples.size();
    j["maximal"] = region.maximal.size();
    j["area_estimate"] = region.area_estimate;
    j["csv"] = out;
    j["border_csv"] = border_path;
    print_json(j);
    return kExitOk;
}

int cmd_pc(const std::string& spec_path, double p0) {
    qubitline::ChannelSpec spec = load_channel(spec_path);
    qubitline::DetectionReport rep = qubitline::optimize_pc(spec.channel, p0);
    nlohmann::json j = qubitline::to_json(rep);
    if (!spec.name.empty()) j["name"] = spec.name;
    j["p0"] = p0;
    print_json(j);
    return kExitOk;
}

int cmd_capacity(const std::string& spec_path, std::size_t samples, double tol) {
    qubitline::ChannelSpec spec = load_channel(spec_path);
    qubitline::CapacityReport rep = qubitline::optimize_capacity(spec.channel, samples, tol);
    nlohmann::json j = qubitline::to_json(rep);
    if (!spec.name.empty()) j["name"] = spec.name;
    print_json(j);
    return kExitOk;
}

// Order inputs may be bare classical channels {"p11":..,"p00":..} or channel
// specs; a spec contributes its capacity-optimal transition point.
qubitline::TransitionPoint load_point(const std::string& path, nlohmann::json& echo) {
    std::string text = slurp(path);
    if (auto p = qubitline::try_parse_transition_point(text)) {
        echo = qubitline::to_json(*p);
        return *p;
    }
    qubitline::ChannelSpec spec = qubitline::parse_channel_spec(text);
    qubitline::CapacityReport rep = qubitline::optimize_capacity(spec.channel);
    echo = {{"channel", spec.name.empty() ? path : spec.name},
            {"point", qubitline::to_json(rep.point)}};
    return rep.point;
}

int cmd_order(const std::string& a_path, const std::string& b_path) {
    nlohmann::json echo_a, echo_b;
    qubitline::TransitionPoint pa = load_point(a_path, echo_a);
    qubitline::TransitionPoint pb = load_point(b_path, echo_b);

    auto ma = qubitline::TransitionMatrix::from_point(pa);
    auto mb = qubitline::TransitionMatrix::from_point(pb);
    auto deg = qubitline::stochastically_degraded(mb, ma);

    nlohmann::json j;
    j["a"] = echo_a;
    j["b"] = echo_b;
    j["dominates"] = qubitline::dominates(pa, pb);
    j["degraded"] = deg.degraded;
    if (deg.witness) j["witness"] = qubitline::to_json(*deg.witness);
    j["less_capable"] = qubitline::less_capable(pb, pa);
    print_json(j);
    return kExitOk;
}

// Fully specified generator so seeded sweeps are byte-identical across
// platforms and thread counts: one splitmix-derived mt19937_64 stream per
// channel index, doubles from the top 53 bits.
std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

struct ChannelStream {
    std::mt19937_64 rng;
    explicit ChannelStream(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t s = seed + 0x632be59bd9b4e019ull * (index + 1);
        std::uint64_t k0 = splitmix64(s), k1 = splitmix64(s);
        std::seed_seq seq{static_cast<std::uint32_t>(k0), static_cast<std::uint32_t>(k0 >> 32),
                          static_cast<std::uint32_t>(k1), static_cast<std::uint32_t>(k1 >> 32)};
        rng.seed(seq);
    }
    double uniform01() { return double(rng() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
};

qubitline::AffineChannel sample_cptp(ChannelStream& stream) {
    for (;;) {
        qubitline::AffineChannel ch;
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c) ch.t(r, c) = stream.uniform(-1.0, 1.0);
        ch.b = {stream.uniform(-1.0, 1.0), stream.uniform(-1.0, 1.0), stream.uniform(-1.0, 1.0)};
        if (qubitline::norm(ch.b) > 1.0) continue;
        if (qubitline::choi_cptp_check(ch).is_cp) return ch;
    }
}

int cmd_sweep(std::size_t count, std::uint64_t seed, std::size_t samples,
              const std::string& out) {
    if (count < 1) throw qubitline::error("count must be at least 1");
    std::vector<std::string> rows(count);
    qubitline::parallel_for(count, [&](std::size_t i) {
        ChannelStream stream(seed, i);
        qubitline::AffineChannel ch = sample_cptp(stream);
        qubitline::DiagonalFrame frame = qubitline::diagonalize(ch);
        qubitline::CapacityReport cap = qubitline::optimize_capacity(ch, samples);
        qubitline::DetectionReport det = qubitline::optimize_pc(ch, 0.5);
        qubitline::Region region = qubitline::generate_region(ch, samples);

        char buf[640];
        std::snprintf(buf, sizeof(buf),
                      "ch%05zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", i,
                      frame.s.x, frame.s.y, frame.s.z, frame.xi.x, frame.xi.y, frame.xi.z,
                      cap.c_bin, det.pc, region.area_estimate);
        rows[i] = buf;
    });

    std::ofstream os(out, std::ios::binary);
    if (!os) throw qubitline::error("cannot open output file: " + out);
    os << "name,a,b,c,bx,by,bz,c_bin,pc_half,area\n";
    for (const auto& row : rows) os << row;

    nlohmann::json j;
    j["count"] = count;
    j["seed"] = seed;
    j["csv"] = out;
    print_json(j);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"binary classical communication over qubit channels"};
    app.require_subcommand(1);

    std::string spec_path, out_path = "out.csv", a_path, b_path;
    std::size_t samples = 256, count = 100;
    double p0 = 0.5, tol = 1e-8;
    std::uint64_t seed = 1;
    bool allow_noncp = false;

    auto* validate = app.add_subcommand("validate", "CP verdict and diagonal frame");
    validate->add_option("spec", spec_path, "channel spec JSON file")->required();
    validate->add_flag("--allow-noncp", allow_noncp, "report non-CP channels without failing");

    auto* region = app.add_subcommand("region", "achievable-region CSV and border polyline");
    region->add_option("spec", spec_path)->required();
    region->add_option("--samples", samples, "edge-problem samples");
    region->add_option("--out", out_path, "output CSV path");

    auto* pc = app.add_subcommand("pc", "optimal probability of correct decision");
    pc->add_option("spec", spec_path)->required();
    pc->add_option("--p0", p0, "prior P(x=0)");

    auto* capacity = app.add_subcommand("capacity", "binary classical capacity");
    capacity->add_option("spec", spec_path)->required();
    capacity->add_option("--samples", samples, "outer-search samples");
    capacity->add_option("--tol", tol, "outer-search refinement tolerance");

    auto* order = app.add_subcommand("order", "channel ordering predicates");
    order->add_option("--a", a_path, "first channel (spec or {p11,p00})")->required();
    order->add_option("--b", b_path, "second channel (spec or {p11,p00})")->required();

    auto* sweep = app.add_subcommand("sweep", "Monte Carlo over random CPTP channels");
    sweep->add_option("--count", count, "number of channels");
    sweep->add_option("--seed", seed, "RNG seed");
    sweep->add_option("--samples", samples, "samples for capacity/region per channel");
    sweep->add_option("--out", out_path, "output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(spec_path, allow_noncp);
        if (region->parsed()) return cmd_region(spec_path, samples, out_path);
        if (pc->parsed()) return cmd_pc(spec_path, p0);
        if (capacity->parsed()) return cmd_capacity(spec_path, samples, tol);
        if (order->parsed()) return cmd_order(a_path, b_path);
        if (sweep->parsed()) return cmd_sweep(count, seed, samples, out_path);
    } catch (const qubitline::cptp_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const qubitline::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
