#pragma once

#include <string>

#include "actnext/activity.hpp"

namespace actnext {

// Activity file: UTF-8 CSV with header intervention,index,lv,li,ls,rv,ri,rs.
// Multi-token elements are space-separated inside double quotes, an empty
// field is an idle element. Indices are dense 1..l per intervention; rows
// may appear in any order. Errors cite the offending file line.
Dataset read_dataset(const std::string& path);
void write_dataset(const Dataset& ds, const std::string& path);

}  // namespace actnext
