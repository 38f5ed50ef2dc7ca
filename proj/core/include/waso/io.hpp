#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "waso/graph.hpp"

namespace waso::io {

struct LoadOptions {
  /// Forces directed loading even without a `directed` header line.
  bool directed{false};
  /// Min-max normalise eta and tau (separately) to [0,1] after loading.
  bool normalize{false};
  double default_lambda{0.5};
};

/// Parses the edge-list and node-score formats.
///
/// Edge lines are `u v [t]` (t defaults to 1.0); `#` starts a comment. A
/// first meaningful line reading `directed` (or a comment `# directed`)
/// switches to directed loading, where `u v t` stores tau(u->v) = t.
/// Otherwise each line is an undirected edge and stores t/2 both ways.
/// Score lines are `v eta [lambda]`. Node ids are dense and follow the order
/// of first appearance: score file first, then edge file.
SocialGraph parse_graph(std::istream& edges, std::istream* scores,
                        const LoadOptions& options = {});
SocialGraph parse_graph_text(const std::string& edges,
                             const std::string& scores = {},
                             const LoadOptions& options = {});
SocialGraph load_graph(const std::filesystem::path& edges,
                       const std::filesystem::path& scores = {},
                       const LoadOptions& options = {});

/// Writes the graph back in the same formats. Undirected graphs (every edge
/// stored symmetrically) are written as undirected edges with weight
/// tau(i,j)+tau(j,i); anything else gets a `directed` header.
void write_edges(std::ostream& out, const SocialGraph& graph);
void write_scores(std::ostream& out, const SocialGraph& graph);

}  // namespace waso::io
