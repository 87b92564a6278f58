# Exact circle primitives
