# Model Language App
