# Circle-map dynamics
