"""Result models printed by the command line."""
