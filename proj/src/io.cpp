#include "wgs/io.hpp"

#include <json.hpp>

#include <iomanip>

namespace wgs {

using nlohmann::json;

CsvWriter::CsvWriter(const std::filesystem::path& path) {
    std::filesystem::create_directories(path.parent_path());
    out_.open(path);
    if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path.string());
    out_ << "t,series,value\n";
}

void CsvWriter::row(double t, const std::string& series, double value) {
    out_ << std::setprecision(17) << t << ',' << series << ',' << value << '\n';
}

namespace {

const char* rep_name(Rep r) {
    switch (r) {
    case Rep::physical: return "physical";
    case Rep::fourier_x: return "fourier_x";
    case Rep::fourier_xy: return "fourier_xy";
    }
    return "?";
}

Rep rep_from(const std::string& s) {
    if (s == "physical") return Rep::physical;
    if (s == "fourier_x") return Rep::fourier_x;
    if (s == "fourier_xy") return Rep::fourier_xy;
    throw std::runtime_error("checkpoint: bad representation tag " + s);
}

} // namespace

void write_checkpoint(std::ostream& os, double t, const CylinderField& f) {
    json rec;
    rec["t"] = t;
    rec["grid"] = {{"L", f.grid().L},
                   {"n_x", f.grid().n_x},
                   {"p_max", f.grid().p_max},
                   {"n_y", f.grid().n_y}};
    rec["rep"] = rep_name(f.rep());
    std::vector<double> flat;
    flat.reserve(2 * f.data().size());
    for (const cplx& z : f.data()) {
        flat.push_back(z.real());
        flat.push_back(z.imag());
    }
    rec["data"] = std::move(flat);
    os << rec.dump() << '\n';
}

void write_checkpoints(const std::filesystem::path& path, const CylinderTrajectory& traj) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_checkpoints: cannot open " + path.string());
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        write_checkpoint(os, traj.times[i], traj.states[i]);
}

std::pair<double, CylinderField> read_checkpoint_line(const std::string& line) {
    json rec = json::parse(line);
    auto g = build_grid(rec["grid"]["L"].get<double>(), rec["grid"]["n_x"].get<int>(),
                        rec["grid"]["p_max"].get<int>(), rec["grid"]["n_y"].get<int>());
    CylinderField f(g, rep_from(rec["rep"].get<std::string>()));
    const auto& flat = rec["data"];
    if (flat.size() != 2 * f.data().size()) throw std::runtime_error("checkpoint: size mismatch");
    for (std::size_t i = 0; i < f.data().size(); ++i)
        f.data()[i] = cplx{flat[2 * i].get<double>(), flat[2 * i + 1].get<double>()};
    return {rec["t"].get<double>(), std::move(f)};
}

bool RunManifest::all_pass() const {
    for (const auto& [k, v] : criteria)
        if (!v) return false;
    return true;
}

void RunManifest::write(const std::filesystem::path& path) const {
    std::filesystem::create_directories(path.parent_path());
    json m;
    m["experiment"] = experiment;
    m["config"] = config_json.empty() ? json::object() : json::parse(config_json);
    m["build"] = build_stamp;
    m["wall_clock_s"] = wall_clock_s;
    m["criteria"] = criteria;
    m["artifacts"] = artifacts;
    std::ofstream os(path);
    if (!os) throw std::runtime_error("manifest: cannot open " + path.string());
    os << m.dump(2) << '\n';
}

std::string build_stamp() {
    std::string s = "wgs ";
#if defined(__VERSION__)
    s += "gcc " __VERSION__ ", ";
#endif
    s += __DATE__;
    return s;
}

} // namespace wgs
