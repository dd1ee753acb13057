// JSON form of structures and homotopies:
// {objects:[...], homs:{"X->Y":{basis:[{label,degree}]}},
//  products:{"n":[{inputs:[labels], outputs:[{label,re,im}]}]}, transversal:[["X","Y"],...]}
// with the homotopy tables under "homotopy". Exact scalars are written as
// rational strings and read from strings or numbers.
#pragma once

#include <json.hpp>

#include "ell/ainf.hpp"

namespace ell::ainf {

using json = nlohmann::ordered_json;

json grid_to_json(const HomGrid& g);
HomGrid grid_from_json(const json& j);

template <class K> json to_json(const AInfStructure<K>& s);
template <class K> json to_json(const HomotopyData<K>& f);
template <class K> AInfStructure<K> structure_from_json(const json& j);
template <class K> HomotopyData<K> homotopy_from_json(const json& j);

} // namespace ell::ainf
