#pragma once

#include <string>

#include "pottsmix/mrf.hpp"

namespace pottsmix {

// Writes the file via a temporary sibling plus rename, so readers never see a
// partial file. Works for text and binary payloads alike.
void atomic_write_file(const std::string& path, const std::string& contents);

// Instance JSON schema:
//   { "n": int, "k": int,
//     "A": [[...]] dense row-major  OR  "edges": [[i, j, w], ...],
//     "H": [[...]] n x k }
// Edge entries are 0-indexed with i <= j; each is mirrored into (j, i) on
// load. Readers accept either coupling encoding; save_instance emits dense
// for n <= 64 and the edge list (nonzero upper triangle, diagonal included)
// otherwise.
std::string instance_to_json(const MrfInstance& inst);
MrfInstance instance_from_json(const std::string& text);

MrfInstance load_instance(const std::string& path);
void save_instance(const MrfInstance& inst, const std::string& path);

}  // namespace pottsmix
