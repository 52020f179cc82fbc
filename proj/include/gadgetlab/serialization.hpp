#pragma once

#include <nlohmann/json.hpp>

#include "gadgetlab/gadgets.hpp"
#include "gadgetlab/hamiltonians.hpp"

namespace gadgetlab {

// {"dims":[...],"terms":[{"support":[...],"pauli":"ZZ"|null,"matrix":[[re,im],...],"coeff":r,"label":s}]}
nlohmann::json to_json(const LocalHamiltonian& h);
LocalHamiltonian local_hamiltonian_from_json(const nlohmann::json& j);

// Gadget Hamiltonian in the format above, plus target, ancilla_sites, delta and witness.
nlohmann::json to_json(const GadgetInstance& g, const GadgetWitness* witness = nullptr);

}  // namespace gadgetlab
