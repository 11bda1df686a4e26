#pragma once

#include "qrious/polycore.hpp"
#include "qrious/landau.hpp"
#include "qrious/dfact.hpp"
#include "qrious/shape.hpp"
#include "qrious/families.hpp"
#include "qrious/identities.hpp"
#include "qrious/scanner.hpp"
