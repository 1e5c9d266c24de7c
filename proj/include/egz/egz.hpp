#pragma once

#include "egz/certificate.hpp"
#include "egz/errors.hpp"
#include "egz/group.hpp"
#include "egz/harborth.hpp"
#include "egz/moment.hpp"
#include "egz/oracle.hpp"
#include "egz/rational.hpp"
#include "egz/sampler.hpp"
#include "egz/sequence_io.hpp"
#include "egz/verifier.hpp"
