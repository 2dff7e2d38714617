// placeholder
#include "perciso/perciso.hpp"
int main() { return 0; }
