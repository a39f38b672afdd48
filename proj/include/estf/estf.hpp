#pragma once

#include "estf/augment.hpp"
#include "estf/error.hpp"
#include "estf/event.hpp"
#include "estf/event_gen.hpp"
#include "estf/fragment.hpp"
#include "estf/io.hpp"
#include "estf/random.hpp"
#include "estf/representation.hpp"
#include "estf/transforms.hpp"
