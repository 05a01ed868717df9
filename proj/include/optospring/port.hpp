#pragma once

// Which cavity output the amplitude quadrature is read at.

namespace optospring {

enum class Port { Reflection, Transmission };

}  // namespace optospring
