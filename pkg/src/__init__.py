# Resurgent Anger-Weber toolkit
