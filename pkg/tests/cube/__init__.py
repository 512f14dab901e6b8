# Cube tests package
