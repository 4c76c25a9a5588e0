#ifndef WGS_IO_HPP
#define WGS_IO_HPP

// Flat CSV series (t,series,value), JSONL field checkpoints, and run manifests.

#include "wgs/field.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <string>

namespace wgs {

class CsvWriter {
  public:
    explicit CsvWriter(const std::filesystem::path& path);
    void row(double t, const std::string& series, double value);

  private:
    std::ofstream out_;
};

// One JSONL record per field: grid header, representation tag, interleaved
// re/im float64 payload.
void write_checkpoint(std::ostream& os, double t, const CylinderField& f);
void write_checkpoints(const std::filesystem::path& path, const CylinderTrajectory& traj);
std::pair<double, CylinderField> read_checkpoint_line(const std::string& line);

struct RunManifest {
    std::string experiment;
    std::string config_json; // resolved configuration
    std::string build_stamp;
    double wall_clock_s = 0.0;
    std::map<std::string, bool> criteria;
    std::vector<std::string> artifacts;

    bool all_pass() const;
    void write(const std::filesystem::path& path) const;
};

std::string build_stamp();

} // namespace wgs

#endif
