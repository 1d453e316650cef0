#pragma once

// Oracle families with query accounting.

#include "oraclelab/oracles/bitstring.hpp"
#include "oraclelab/oracles/channel.hpp"
#include "oraclelab/oracles/descriptor.hpp"
#include "oraclelab/oracles/grover.hpp"
#include "oraclelab/oracles/language.hpp"
#include "oraclelab/oracles/marked.hpp"
#include "oraclelab/oracles/query_counter.hpp"
