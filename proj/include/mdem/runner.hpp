#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace mdem {

/// Execute one solver run from a config file, writing artifacts into the
/// output directory. Returns 0 on success, 2 on a config error, 3 on a
/// numerical failure.
int run_command(const std::string& config_path, const std::string& out_override,
                std::optional<uint64_t> seed_override,
                const std::string& profile);

/// Compare fields.csv between two run directories, writing a per-field
/// error report (relative L2, max abs error and its location). Directory B
/// is the reference. Returns 0 on success, 3 on failure or mismatched
/// point sets.
int compare_command(const std::string& dir_a, const std::string& dir_b,
                    const std::string& report_path);

/// Regenerate fields.vtk from the CSV artifacts in a run directory.
int export_vtk_command(const std::string& run_dir);

}  // namespace mdem
