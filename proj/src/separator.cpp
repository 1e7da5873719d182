namespace kleinsep {}
