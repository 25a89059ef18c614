// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "gfmimo/experiments.hpp"

namespace gfmimo {

enum class PresetScale { Full, Desk };

PresetScale preset_scale_from_string(const std::string& s);

/// One multi-curve experiment (one figure); each curve is an SNR sweep.
struct FigurePreset {
  std::string name;
  struct Curve {
    std::string name;  // used for the CSV file name
    SweepSpec spec;
  };
  std::vector<Curve> curves;
};

/// Presets fig1..fig4. Full scale uses the published parameters; desk scale
/// shrinks (d, T) by 8 with the ratios T/d, MT/d and N_a/M preserved, and
/// sizes trial counts for a desktop run. Throws on an unknown name.
FigurePreset preset(const std::string& name, PresetScale scale,
                    std::uint64_t seed = 12345);

}  // namespace gfmimo
