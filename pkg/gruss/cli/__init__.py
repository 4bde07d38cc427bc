"""Command line front end of gruss."""
