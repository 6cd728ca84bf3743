#pragma once

#include <json.hpp>

#include "witt/coadjoint.hpp"
#include "witt/env.hpp"
#include "witt/lie.hpp"
#include "witt/localfn.hpp"
#include "witt/matrix.hpp"
#include "witt/modules.hpp"

namespace witt {

using Json = nlohmann::json;

// Output-side serializers for the CLI's --json mode. Rationals are emitted as
// exact "p/q" strings, never floats.
Json to_json(const Rat& r);
Json to_json(const std::vector<Rat>& v);
Json to_json(const RatMatrix& m);
Json to_json(const LaurentPoly& p);
Json to_json(const WittElement& w);
Json to_json(const EnvElement& u);
Json to_json(const LocalFunction& chi);
Json to_json(const GroupElement& g);
Json to_json(const ModuleVector& v);
Json to_json(const GeneratorReduction& r);
Json to_json(const ReduceResult& r);
Json to_json(const DixmierDescriptor& d);

}  // namespace witt
