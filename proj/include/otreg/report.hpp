#pragma once

// Report serialization. JSON is canonical; CSV carries only the
// counterexample table; text is a summary.

#include <iosfwd>
#include <string>

#include "otreg/cli.hpp"
#include "otreg/verdict.hpp"

namespace otreg::cli {

json to_json(const Vec& v);
Vec vec_from_json(const json& j);
json to_json(const DomainBox& b);
DomainBox box_from_json(const json& j);
json to_json(const CheckBoxes& b);
CheckBoxes boxes_from_json(const json& j);

json to_json(const Counterexample& c);
Counterexample counterexample_from_json(const json& j);

// Summary fields of a verdict; counterexamples go to the top-level table.
json verdict_json(const std::string& check, const Target& target, const Verdict& v);

void write_report(const json& report, const std::string& format, std::ostream& os);

}  // namespace otreg::cli
