// core/include/paralin/numeric_io.hpp

// Copyright 2026  paralin authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef PARALIN_NUMERIC_IO_HPP_
#define PARALIN_NUMERIC_IO_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace paralin {

// Shortest decimal representation that round-trips to the same double.
// All text output of the library goes through this so that re-running a
// stage reproduces its files byte for byte.
std::string format_double(double v);
void append_double(std::string &out, double v);

// Strict double parse of the whole token; *ok reports success.
double parse_double(std::string_view text, bool *ok);

// Splits on commas; no quoting rules.
std::vector<std::string_view> split_csv_line(std::string_view line);

// Strips one trailing '\r' (files written on Windows).
std::string_view strip_cr(std::string_view line);

}  // namespace paralin

#endif  // PARALIN_NUMERIC_IO_HPP_
