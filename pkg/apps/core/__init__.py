# Core App
