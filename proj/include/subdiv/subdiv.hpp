#pragma once

// Everything except manifest.hpp, which pulls in OpenSSL.
#include "subdiv/error.hpp"
#include "subdiv/complex.hpp"
#include "subdiv/marking.hpp"
#include "subdiv/shapes.hpp"
#include "subdiv/rules.hpp"
#include "subdiv/io.hpp"
#include "subdiv/carrier_graph.hpp"
#include "subdiv/modulus.hpp"
#include "subdiv/conformal.hpp"
#include "subdiv/packing.hpp"
#include "subdiv/verify.hpp"
