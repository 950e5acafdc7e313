#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "corrlab/dist.hpp"

namespace corrlab {

// Distributions and channels travel as JSON objects:
//   2-dim:   {"labels_x": [...], "labels_y": [...], "pmf": [[row0], [row1], ...]}
//   3-dim:   adds "labels_u"; "pmf" becomes one matrix per u: pmf[u][x][y]
//   channel: {"kernel": [[[K(w|x,y) for w] for y] for x]}
// Labels are optional and default to 0..n-1. Inputs are validated and
// re-normalized (total mass within 1e-12 of 1 is rescaled to exactly 1).

using AnyDist = std::variant<JointDist2, JointDist3>;

AnyDist parse_dist(const std::string& text);
AnyDist read_dist(const std::string& path);
JointDist2 read_dist2(const std::string& path); // ShapeMismatch on a 3-tensor

Channel parse_channel(const std::string& text);
Channel read_channel(const std::string& path);

std::string to_json(const JointDist2& d);
std::string to_json(const JointDist3& d);
std::string to_json(const Channel& ch);

void write_dist(const JointDist2& d, const std::string& path);
void write_dist(const JointDist3& d, const std::string& path);
void write_channel(const Channel& ch, const std::string& path);

} // namespace corrlab
