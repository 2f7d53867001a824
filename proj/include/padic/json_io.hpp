#pragma once

#include <string>

#include "json.hpp"
#include "padic/lc_function.hpp"
#include "padic/operators.hpp"

namespace padic {

using Json = nlohmann::json;

// JSON encodings of the library types.  Schema violations raise Error with
// code "schema" and a message naming the offending field.

Json to_json(const PAdic& x);                 // {"p":int,"v":int,"digits":[int]}
PAdic padic_from_json(const Json& j, int precision = PAdic::kDefaultPrecision);

Json to_json(const Ball& b);                  // {"p":..,"d":..,"L":..,"c":[".."]}
Ball ball_from_json(const Json& j);

Json to_json(const WaveletIndex& idx);        // {"gamma":..,"n":[[..]],"J":[..]}
WaveletIndex wavelet_index_from_json(const Json& j);

Json to_json(const LCFunction& f);            // {"support":..,"R":..,"cells":[..]}
LCFunction lc_function_from_json(const Json& j);

Json to_json(const KernelSpec& F);
KernelSpec kernel_from_json(const Json& j);

Json to_json(const VectorField& k);
VectorField field_from_json(const Json& j);

Json to_json(const Window& w);
Window window_from_json(const Json& j);

// Morphism specs are an input format:
//   {"kind":"dilation","p":..,"d":..,"gamma":..}
//   {"kind":"isometry","p":..,"d":..,"seed":..,"mode":"perm"|"affine","anchor":..}
//   {"kind":"isometry","p":..,"d":..,"table":[{"ball":"..","perm":[..]} |
//                                             {"ball":"..","A":[[..]],"b":[..]}],"anchor":..}
//   {"kind":"affine","p":..,"a":"literal","u":"literal"}      (d = 1)
//   {"kind":"compose","parts":[..]}   parts applied right to left
Morphism morphism_from_json(const Json& j);

Json load_json_file(const std::string& path);

} // namespace padic
