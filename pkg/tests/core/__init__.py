# Core tests package
