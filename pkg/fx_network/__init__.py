"""Foreign-exchange correlation networks seen from a chosen base currency."""
