# Tests package for phconnect
