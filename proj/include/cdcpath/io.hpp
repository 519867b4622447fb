#pragma once

#include <string>

#include "cdcpath/biclique.hpp"
#include "cdcpath/cdc.hpp"
#include "cdcpath/geometry.hpp"
#include "cdcpath/mip.hpp"
#include "cdcpath/partition.hpp"
#include "cdcpath/solver.hpp"

namespace cdcpath {

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// {"bounds": [[x0,y0],[x1,y1]], "obstacles": [[[x,y],...],...], "seed": n?}
std::string env_to_json(const Environment& env);
Environment env_from_json(const std::string& text);
Environment load_env(const std::string& path);

// {"vertices": [[x,y],...], "faces": [[i,...],...]}
std::string partition_to_json(const Partition& p);

// One "u v" line per conflict edge.
std::string conflict_edges_text(const ConflictGraph& g);

// Mirrors the cover table layout: "Level | A | B" with 1-based vertex sets.
std::string cover_table_text(const BicliqueCover& cover);
std::string cover_to_json(const BicliqueCover& cover);

std::string summary_to_json(const ModelSummary& s);
std::string bnb_result_to_json(const BnbResult& r);

}  // namespace cdcpath
