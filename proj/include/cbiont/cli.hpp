#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cbiont::cli {

// Exit codes: 0 success, 1 usage error, 2 parse/ingest error, 3 validation
// violations found (validate only). Diagnostics go to err, data to out.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cbiont::cli
